#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "fdspc/curvature.hpp"
#include "fdspc/geometry.hpp"

namespace fdspc {

/// Sorted key -> locator multimap keyed by Euclidean distance-to-goal.
/// pop_min returns the smallest key; equal keys pop in insertion order.
class HeuristicIndex {
public:
    void insert(double key, const std::string& locator);
    bool erase(const std::string& locator);
    bool contains(const std::string& locator) const { return handles_.count(locator) > 0; }
    std::pair<std::string, double> pop_min();
    std::size_t size() const { return by_key_.size(); }
    bool empty() const { return by_key_.empty(); }

private:
    std::multimap<double, std::string> by_key_;
    std::unordered_map<std::string, std::multimap<double, std::string>::iterator> handles_;
};

struct TreeStats {
    std::size_t created = 0;
    std::size_t popped = 0;
    std::size_t pruned = 0;
};

/// Binary tree of path segments addressed by L/R locator strings, plus the
/// heuristic index over expandable nodes. Each node stores the curvature
/// segment from its parent and the integrated entry/exit states; a child's
/// locator is its parent's plus one letter. Inserting a node's second child
/// prunes the parent from the index (expansion exhausted).
class PathTree {
public:
    struct Node {
        CurvatureProfile value;
        PlannerState entry_state;
        PlannerState exit_state;
        std::string sequ;
        std::unique_ptr<Node> left;
        std::unique_ptr<Node> right;
        bool closed = false;  // abandoned by an exhausted sweep
    };

    /// Root enters the index immediately; root_value may carry an initial
    /// segment (defaults to empty, exit == entry).
    PathTree(const PlannerState& start, const Point25& goal,
             const CurvatureProfile& root_value = {});

    /// Create a child under parent_locator on the given side ('L' or 'R').
    /// The segment integrates from the parent's exit state; the child enters
    /// the index keyed by planar distance from its exit to the goal.
    /// Throws std::invalid_argument on a missing parent or occupied side.
    std::string insert(const std::string& parent_locator, char side,
                       const CurvatureProfile& segment);

    std::pair<std::string, double> pop_min();
    bool index_empty() const { return index_.empty(); }
    std::size_t index_size() const { return index_.size(); }

    const Node& at(const std::string& locator) const;
    bool exists(const std::string& locator) const { return find(locator) != nullptr; }
    void mark_closed(const std::string& locator);

    /// Concatenation of segments along root -> leaf, root-first.
    CurvatureProfile reconstruct(const std::string& leaf_locator) const;

    const TreeStats& stats() const { return stats_; }
    const Point25& goal() const { return goal_; }
    std::size_t node_count() const { return stats_.created; }

    /// JSON text with one record per node: locator, exit position, key, flags.
    std::string dump_json() const;

private:
    Node* find(const std::string& locator);
    const Node* find(const std::string& locator) const;

    std::unique_ptr<Node> root_;
    HeuristicIndex index_;
    Point25 goal_;
    TreeStats stats_;
};

}  // namespace fdspc
