// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tiht/tensor.hpp"

namespace tiht {

// Ordered list of positive ranks. Its meaning depends on the format: one
// entry per mode (HOSVD), per interior bond (TT) or per tree node (HT).
class RankTuple {
public:
    RankTuple() = default;
    explicit RankTuple(std::vector<Index> ranks);
    RankTuple(std::initializer_list<Index> ranks) : RankTuple(std::vector<Index>(ranks)) {}

    // All entries equal to r.
    static RankTuple uniform(Index count, Index r);
    // "2,2,2" or "2x2x2"
    static RankTuple parse(std::string_view text);

    const std::vector<Index>& values() const { return ranks_; }
    Index size() const { return static_cast<Index>(ranks_.size()); }
    bool empty() const { return ranks_.empty(); }
    Index operator[](Index k) const { return ranks_[static_cast<std::size_t>(k)]; }
    bool is_uniform() const;

    bool operator==(const RankTuple&) const = default;
    std::string to_string() const;  // "2,2,2"

private:
    std::vector<Index> ranks_;
};

}  // namespace tiht
