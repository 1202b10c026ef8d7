#include "fdspc/search_tree.hpp"

#include <stdexcept>

#include "json.hpp"

namespace fdspc {

void HeuristicIndex::insert(double key, const std::string& locator) {
    if (handles_.count(locator))
        throw std::invalid_argument("HeuristicIndex: duplicate locator " + locator);
    auto it = by_key_.emplace(key, locator);  // equal keys keep insertion order
    handles_.emplace(locator, it);
}

bool HeuristicIndex::erase(const std::string& locator) {
    auto h = handles_.find(locator);
    if (h == handles_.end()) return false;
    by_key_.erase(h->second);
    handles_.erase(h);
    return true;
}

std::pair<std::string, double> HeuristicIndex::pop_min() {
    if (by_key_.empty()) throw std::out_of_range("HeuristicIndex: pop from empty index");
    auto it = by_key_.begin();
    std::pair<std::string, double> out{it->second, it->first};
    handles_.erase(it->second);
    by_key_.erase(it);
    return out;
}

PathTree::PathTree(const PlannerState& start, const Point25& goal,
                   const CurvatureProfile& root_value)
    : goal_(goal) {
    root_ = std::make_unique<Node>();
    root_->entry_state = start;
    root_->value = root_value;
    root_->exit_state = root_value.empty() ? start : integrate(start, root_value).back();
    stats_.created = 1;
    index_.insert(planar_distance(root_->exit_state.position(), goal_), "");
}

PathTree::Node* PathTree::find(const std::string& locator) {
    Node* n = root_.get();
    for (char c : locator) {
        if (c == 'L')
            n = n->left.get();
        else if (c == 'R')
            n = n->right.get();
        else
            return nullptr;
        if (!n) return nullptr;
    }
    return n;
}

const PathTree::Node* PathTree::find(const std::string& locator) const {
    return const_cast<PathTree*>(this)->find(locator);
}

const PathTree::Node& PathTree::at(const std::string& locator) const {
    const Node* n = find(locator);
    if (!n) throw std::invalid_argument("PathTree: no node at locator \"" + locator + "\"");
    return *n;
}

std::string PathTree::insert(const std::string& parent_locator, char side,
                             const CurvatureProfile& segment) {
    if (side != 'L' && side != 'R') throw std::invalid_argument("PathTree: side must be L or R");
    Node* parent = find(parent_locator);
    if (!parent)
        throw std::invalid_argument("PathTree: no node at locator \"" + parent_locator + "\"");
    auto& slot = side == 'L' ? parent->left : parent->right;
    if (slot) throw std::invalid_argument("PathTree: side already occupied");

    auto child = std::make_unique<Node>();
    child->value = segment;
    child->entry_state = parent->exit_state;
    child->exit_state = segment.empty() ? parent->exit_state
                                        : integrate(parent->exit_state, segment).back();
    child->sequ = parent_locator + side;
    slot = std::move(child);
    ++stats_.created;

    index_.insert(planar_distance(slot->exit_state.position(), goal_), slot->sequ);
    if (parent->left && parent->right) {
        if (index_.erase(parent->sequ)) ++stats_.pruned;
    }
    return slot->sequ;
}

std::pair<std::string, double> PathTree::pop_min() {
    auto out = index_.pop_min();
    ++stats_.popped;
    return out;
}

void PathTree::mark_closed(const std::string& locator) {
    Node* n = find(locator);
    if (n) {
        n->closed = true;
        ++stats_.pruned;
    }
}

CurvatureProfile PathTree::reconstruct(const std::string& leaf_locator) const {
    const Node* leaf = find(leaf_locator);
    if (!leaf)
        throw std::invalid_argument("PathTree: no node at locator \"" + leaf_locator + "\"");
    CurvatureProfile out;
    out.dt = leaf->value.dt;
    const Node* n = root_.get();
    out = concat(out, n->value);
    for (char c : leaf_locator) {
        n = c == 'L' ? n->left.get() : n->right.get();
        out = concat(out, n->value);
    }
    return out;
}

std::string PathTree::dump_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    // Depth-first, children after parents, L before R.
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        nodes.push_back({{"locator", n->sequ},
                         {"x", n->exit_state.x},
                         {"y", n->exit_state.y},
                         {"z", n->exit_state.z},
                         {"key", planar_distance(n->exit_state.position(), goal_)},
                         {"closed", n->closed},
                         {"steps", n->value.size()}});
        if (n->right) stack.push_back(n->right.get());
        if (n->left) stack.push_back(n->left.get());
    }
    nlohmann::json j{{"goal", {goal_.x, goal_.y}},
                     {"created", stats_.created},
                     {"popped", stats_.popped},
                     {"pruned", stats_.pruned},
                     {"nodes", std::move(nodes)}};
    return j.dump(2);
}

}  // namespace fdspc
