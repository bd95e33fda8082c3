// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "support.hpp"
#include "tiht/generator.hpp"
#include "tiht/io.hpp"

namespace tiht {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("tiht_io_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path file(const char* name) const { return dir_ / name; }

    fs::path dir_;
};

TEST_F(IoTest, TensorRoundtripIsExact) {
    std::mt19937_64 rng(1);
    const auto x = testing::random_tensor<double>(Shape{3, 4, 5}, rng);
    const auto xc = testing::random_tensor<Complex>(Shape{2, 7}, rng);
    save_tensor(file("x.tiht"), x);
    save_tensor(file("xc.tiht"), xc);
    EXPECT_EQ(load_tensor<double>(file("x.tiht")), x);
    EXPECT_EQ(load_tensor<Complex>(file("xc.tiht")), xc);
    EXPECT_EQ(stored_field(file("x.tiht")), Field::Real);
    EXPECT_EQ(stored_field(file("xc.tiht")), Field::Complex);
}

TEST_F(IoTest, FieldMismatchIsAnArgumentError) {
    save_tensor(file("x.tiht"), Tensor<double>(Shape{2}));
    EXPECT_THROW(load_tensor<Complex>(file("x.tiht")), ArgumentError);
}

TEST_F(IoTest, CorruptFilesAreIoErrors) {
    EXPECT_THROW(load_tensor<double>(file("missing.tiht")), IoError);
    {
        std::ofstream os(file("junk.tiht"), std::ios::binary);
        os << "NOTATIHTFILE";
    }
    EXPECT_THROW(load_tensor<double>(file("junk.tiht")), IoError);

    save_tensor(file("x.tiht"), Tensor<double>(Shape{10, 10}));
    const auto full = fs::file_size(file("x.tiht"));
    fs::resize_file(file("x.tiht"), full - 8);
    EXPECT_THROW(load_tensor<double>(file("x.tiht")), IoError);
    fs::resize_file(file("x.tiht"), 20);
    EXPECT_THROW(load_tensor<double>(file("x.tiht")), IoError);
}

TEST_F(IoTest, MalformedHeaderIsAnIoError) {
    const std::string header = R"({"kind":"tensor","field":"real","dims":"oops"})";
    {
        std::ofstream os(file("bad.tiht"), std::ios::binary);
        os << "TIHT1\n";
        const std::uint64_t len = header.size();
        for (int b = 0; b < 8; ++b) os.put(static_cast<char>((len >> (8 * b)) & 0xFF));
        os << header;
    }
    EXPECT_THROW(load_tensor<double>(file("bad.tiht")), IoError);
}

template <class D>
void expect_decomposition_roundtrip(const fs::path& path, const Decomposition<double>& d) {
    save_decomposition<double>(path, d);
    const auto back = load_decomposition<double>(path);
    ASSERT_TRUE(std::holds_alternative<D>(back));
    EXPECT_EQ(reconstruct<double>(back), reconstruct<double>(d));
}

TEST_F(IoTest, DecompositionsRoundtripEveryFormat) {
    const Shape shape{3, 4, 3, 2};
    const auto x = generate_low_rank(LowRankModel(Format::Hosvd, shape, RankTuple{2}), 5);
    expect_decomposition_roundtrip<HosvdDecomposition<double>>(file("h.tiht"),
                                                               truncate(x, LowRankModel(Format::Hosvd, shape, RankTuple{2})));
    expect_decomposition_roundtrip<TTDecomposition<double>>(file("t.tiht"),
                                                            truncate(x, LowRankModel(Format::TT, shape, RankTuple{2})));
    const LowRankModel ht(Format::HT, shape, RankTuple{2}, DimensionTree::linear(4));
    expect_decomposition_roundtrip<HTDecomposition<double>>(file("ht.tiht"), truncate(x, ht));
    const auto back = std::get<HTDecomposition<double>>(load_decomposition<double>(file("ht.tiht")));
    EXPECT_EQ(back.tree, DimensionTree::linear(4));
}

TEST_F(IoTest, DenseTensorIsNotADecomposition) {
    save_tensor(file("x.tiht"), Tensor<double>(Shape{2, 2}));
    EXPECT_THROW(load_decomposition<double>(file("x.tiht")), IoError);
}

}  // namespace
}  // namespace tiht
