// SPDX-License-Identifier: Apache-2.0
#include "tiht/ranks.hpp"

#include <algorithm>
#include <charconv>

namespace tiht {

RankTuple::RankTuple(std::vector<Index> ranks) : ranks_(std::move(ranks)) {
    for (Index r : ranks_)
        if (r < 1) throw ArgumentError("ranks must be positive");
}

RankTuple RankTuple::uniform(Index count, Index r) {
    return RankTuple(std::vector<Index>(static_cast<std::size_t>(count), r));
}

RankTuple RankTuple::parse(std::string_view text) {
    std::vector<Index> ranks;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find_first_of("x,", pos);
        if (next == std::string_view::npos) next = text.size();
        auto token = text.substr(pos, next - pos);
        Index value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ArgumentError("cannot parse rank tuple '" + std::string(text) + "'");
        }
        ranks.push_back(value);
        pos = next + 1;
    }
    return RankTuple(std::move(ranks));
}

bool RankTuple::is_uniform() const {
    return std::adjacent_find(ranks_.begin(), ranks_.end(), std::not_equal_to<>()) == ranks_.end();
}

std::string RankTuple::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < ranks_.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(ranks_[k]);
    }
    return out;
}

}  // namespace tiht
