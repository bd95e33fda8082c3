// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <vector>

#include "tiht/tensor.hpp"

namespace tiht {

// Binary tree over the modes [0, d). Every node owns a contiguous range
// [first, last); an interior node splits it into a left son [first, mid) and
// a right son [mid, last). Node ids follow preorder, so the root is id 0.
class DimensionTree {
public:
    struct Node {
        Index first = 0;
        Index last = 0;
        int parent = -1;
        int left = -1;
        int right = -1;
        int level = 0;

        bool is_leaf() const { return left < 0; }
        Index width() const { return last - first; }
    };

    // Splits every range in half, the left son taking the larger half.
    static DimensionTree balanced(Index d);
    // Caterpillar {0..d-1} -> {0}, {1..d-1} -> {1}, {2..d-1} -> ...
    static DimensionTree linear(Index d);

    // Nested {"first":0,"last":4,"children":[{...},{...}]}; leaves omit children.
    static DimensionTree from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    Index order() const { return order_; }
    Index node_count() const { return static_cast<Index>(nodes_.size()); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    static constexpr int root() { return 0; }

    int leaf_of_mode(Index k) const { return leaf_of_mode_.at(static_cast<std::size_t>(k)); }
    ModeSet modes(int id) const { return ModeSet::range(node(id).first, node(id).last); }
    int depth() const;

    // Interior nodes ordered deepest level first (ties by id); root is last.
    std::vector<int> interior_bottom_up() const;

    bool operator==(const DimensionTree& other) const;

private:
    int add_node(Index first, Index last, int parent, int level);
    void finalize();

    Index order_ = 0;
    std::vector<Node> nodes_;
    std::vector<int> leaf_of_mode_;
};

}  // namespace tiht
