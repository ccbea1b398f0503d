#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "boolopt/table_io.hpp"

using namespace boolopt;

TEST(TableIo, KnownEncoding) {
    // Entries 1 and 3 are -1: bits 0b1010 in the first digit.
    const SignFunction f(2, {1, -1, 1, -1});
    EXPECT_EQ(format_table(f), "n=2\na\n");
    // n = 1 fits in one digit with the two high bits clear.
    EXPECT_EQ(format_table(SignFunction(1, {-1, 1})), "n=1\n1\n");
    // Bit 4 starts the second digit.
    std::vector<std::int8_t> v(8, 1);
    v[4] = -1;
    EXPECT_EQ(format_table(SignFunction(3, v)), "n=3\n01\n");
}

TEST(TableIo, RoundTripProperty) {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<std::int8_t> v(std::size_t{1} << n);
        for (auto& s : v) s = (rng() & 1) ? -1 : 1;
        const SignFunction f(n, v);
        std::istringstream in(format_table(f));
        ASSERT_EQ(parse_table(in), f);
    }
}

TEST(TableIo, StrictParserRejectsMalformedInput) {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return parse_table(in);
    };
    EXPECT_NO_THROW(parse("n=2\nA\n"));
    EXPECT_THROW(parse("m=2\na\n"), ParameterError);
    EXPECT_THROW(parse("n=2x\na\n"), ParameterError);
    EXPECT_THROW(parse("n=3\na\n"), ParameterError);   // too short
    EXPECT_THROW(parse("n=2\ng\n"), ParameterError);   // not hex
    EXPECT_THROW(parse("n=1\n4\n"), ParameterError);   // padding bit set
    EXPECT_THROW(parse("n=40\n0\n"), ParameterError);
}

TEST(TableIo, LenientParserMarksErasures) {
    std::istringstream in("n=3\n0z\n");
    std::size_t erasures = 0;
    const SignFunction f = parse_table_lenient(in, erasures);
    EXPECT_EQ(erasures, 4u);
    EXPECT_FALSE(f.is_total());
    EXPECT_EQ(f[0], 1);
    EXPECT_EQ(f[4], 0);
}

TEST(TableIo, PackedSignsOfArbitraryLength) {
    const std::vector<std::int8_t> h{-1, 1, 1, 1, -1};
    const std::string hex = pack_signs(h);
    EXPECT_EQ(hex, "11");
    EXPECT_EQ(unpack_signs(hex, 5), h);
    EXPECT_THROW(unpack_signs("13", 5), ParameterError);  // bit 5 is padding
    EXPECT_THROW(unpack_signs("1", 5), ParameterError);
}

TEST(TableIo, AtomicFileWrite) {
    const auto dir = std::filesystem::temp_directory_path() / "boolopt_table_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "t.tt";
    const SignFunction f(3, {1, -1, -1, 1, 1, 1, -1, 1});
    save_table(path, f);
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    EXPECT_EQ(load_table(path), f);
    std::filesystem::remove_all(dir);
}
