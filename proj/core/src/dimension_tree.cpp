// SPDX-License-Identifier: Apache-2.0
#include "tiht/dimension_tree.hpp"

#include <algorithm>
#include <functional>

namespace tiht {

int DimensionTree::add_node(Index first, Index last, int parent, int level) {
    Node n;
    n.first = first;
    n.last = last;
    n.parent = parent;
    n.level = level;
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

void DimensionTree::finalize() {
    leaf_of_mode_.assign(static_cast<std::size_t>(order_), -1);
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
        if (nodes_[id].is_leaf()) leaf_of_mode_[static_cast<std::size_t>(nodes_[id].first)] = static_cast<int>(id);
    }
}

DimensionTree DimensionTree::balanced(Index d) {
    if (d < 1) throw ArgumentError("dimension tree needs at least one mode");
    DimensionTree t;
    t.order_ = d;
    std::function<int(Index, Index, int, int)> build = [&](Index first, Index last, int parent, int level) {
        const int id = t.add_node(first, last, parent, level);
        if (last - first > 1) {
            const Index mid = first + (last - first + 1) / 2;
            const int l = build(first, mid, id, level + 1);
            const int r = build(mid, last, id, level + 1);
            t.nodes_[static_cast<std::size_t>(id)].left = l;
            t.nodes_[static_cast<std::size_t>(id)].right = r;
        }
        return id;
    };
    build(0, d, -1, 0);
    t.finalize();
    return t;
}

DimensionTree DimensionTree::linear(Index d) {
    if (d < 1) throw ArgumentError("dimension tree needs at least one mode");
    DimensionTree t;
    t.order_ = d;
    std::function<int(Index, int, int)> build = [&](Index first, int parent, int level) {
        const int id = t.add_node(first, d, parent, level);
        if (d - first > 1) {
            const int l = t.add_node(first, first + 1, id, level + 1);
            const int r = build(first + 1, id, level + 1);
            t.nodes_[static_cast<std::size_t>(id)].left = l;
            t.nodes_[static_cast<std::size_t>(id)].right = r;
        }
        return id;
    };
    build(0, -1, 0);
    t.finalize();
    return t;
}

DimensionTree DimensionTree::from_json(const nlohmann::json& j) {
    DimensionTree t;
    std::function<int(const nlohmann::json&, int, int)> build = [&](const nlohmann::json& n, int parent, int level) {
        if (!n.is_object() || !n.contains("first") || !n.contains("last")) {
            throw ArgumentError("tree node must be an object with 'first' and 'last'");
        }
        const Index first = n.at("first").get<Index>();
        const Index last = n.at("last").get<Index>();
        if (last <= first) throw ArgumentError("tree node has an empty mode range");
        const int id = t.add_node(first, last, parent, level);
        if (n.contains("children")) {
            const auto& c = n.at("children");
            if (!c.is_array() || c.size() != 2) throw ArgumentError("interior tree node needs exactly two children");
            const int l = build(c[0], id, level + 1);
            const int r = build(c[1], id, level + 1);
            const Node& ln = t.nodes_[static_cast<std::size_t>(l)];
            const Node& rn = t.nodes_[static_cast<std::size_t>(r)];
            if (ln.first != first || ln.last != rn.first || rn.last != last) {
                throw ArgumentError("children must split the parent range into consecutive pieces");
            }
            t.nodes_[static_cast<std::size_t>(id)].left = l;
            t.nodes_[static_cast<std::size_t>(id)].right = r;
        } else if (last - first != 1) {
            throw ArgumentError("leaf must own exactly one mode");
        }
        return id;
    };
    try {
        build(j, -1, 0);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("malformed dimension tree: ") + e.what());
    }
    if (t.nodes_.front().first != 0) throw ArgumentError("tree root must start at mode 0");
    t.order_ = t.nodes_.front().last;
    t.finalize();
    return t;
}

nlohmann::json DimensionTree::to_json() const {
    std::function<nlohmann::json(int)> emit = [&](int id) {
        const Node& n = node(id);
        nlohmann::json j = {{"first", n.first}, {"last", n.last}};
        if (!n.is_leaf()) j["children"] = nlohmann::json::array({emit(n.left), emit(n.right)});
        return j;
    };
    return emit(root());
}

int DimensionTree::depth() const {
    int d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.level);
    return d;
}

std::vector<int> DimensionTree::interior_bottom_up() const {
    std::vector<int> ids;
    for (std::size_t id = 0; id < nodes_.size(); ++id)
        if (!nodes_[id].is_leaf()) ids.push_back(static_cast<int>(id));
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return node(a).level > node(b).level; });
    return ids;
}

bool DimensionTree::operator==(const DimensionTree& other) const {
    if (order_ != other.order_ || nodes_.size() != other.nodes_.size()) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& a = nodes_[i];
        const Node& b = other.nodes_[i];
        if (a.first != b.first || a.last != b.last || a.left != b.left || a.right != b.right) return false;
    }
    return true;
}

}  // namespace tiht
