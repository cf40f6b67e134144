#include <gtest/gtest.h>

#include <sstream>

#include "lisa/error.hpp"
#include "lisa/fmindex.hpp"
#include "lisa/seqcore.hpp"
#include "oracle.hpp"

using namespace lisa;

TEST(EncodeBase, RankOrderCodes) {
  EXPECT_EQ(encode_base('A'), Base::A);
  EXPECT_EQ(code(encode_base('A')), 0);
  EXPECT_EQ(code(encode_base('C')), 1);
  EXPECT_EQ(code(encode_base('G')), 2);
  EXPECT_EQ(code(encode_base('T')), 3);
  EXPECT_EQ(encode_base('t'), Base::T);
  for (char c : std::string("ACGT")) EXPECT_EQ(decode_base(encode_base(c)), c);
}

TEST(EncodeBase, RejectsN) {
  try {
    encode_base('N', 7);
    FAIL() << "expected InvalidCharacterError";
  } catch (const InvalidCharacterError& e) {
    EXPECT_EQ(e.character(), 'N');
    EXPECT_EQ(e.offset(), 7u);
  }
}

TEST(EncodeBase, OrderIsomorphicOnEqualLengthStrings) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = oracle::random_dna(rng, 12), b = oracle::random_dna(rng, 12);
    std::uint64_t ea = 0, eb = 0;
    for (Base x : encode_sequence(a)) ea = ea * 4 + code(x);
    for (Base x : encode_sequence(b)) eb = eb * 4 + code(x);
    EXPECT_EQ(a < b, ea < eb) << a << " " << b;
  }
}

TEST(LoadFasta, FigureOneReference) {
  std::istringstream in(">r\nATACGAC\n");
  const Reference ref = load_fasta(in);
  EXPECT_EQ(ref.size(), 8u);
  EXPECT_EQ(ref.name(), "r");
  EXPECT_EQ(ref.to_string(), "ATACGAC$");
  EXPECT_EQ(ref.symbol(7), kSentinelSymbol);
}

TEST(LoadFasta, UppercasesAndHandlesCrlf) {
  std::istringstream in(">r desc\r\nacgt\r\n\r\n");
  const Reference ref = load_fasta(in);
  EXPECT_EQ(ref.to_string(), "ACGT$");
  EXPECT_EQ(ref.name(), "r");
}

TEST(LoadFasta, InvalidCharacterReportsLineAndColumn) {
  std::istringstream in(">r\nACGN\n");
  try {
    load_fasta(in);
    FAIL();
  } catch (const InvalidCharacterError& e) {
    EXPECT_EQ(e.character(), 'N');
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(LoadFasta, EmptyInput) {
  std::istringstream empty("");
  EXPECT_THROW(load_fasta(empty), EmptyInputError);
  std::istringstream header_only(">r\n");
  EXPECT_THROW(load_fasta(header_only), EmptyInputError);
}

TEST(LoadFasta, MultiRecordConcatenates) {
  std::istringstream in(">a\nAC\nG\n>b\nTT\n");
  const Reference ref = load_fasta(in);
  EXPECT_EQ(ref.to_string(), "ACGTT$");
  EXPECT_EQ(ref.name(), "a");
}

TEST(LoadFasta, WriteThenReloadKeepsText) {
  std::mt19937_64 rng(11);
  for (std::size_t len : {1u, 59u, 60u, 61u, 500u}) {
    const Reference ref = oracle::reference(oracle::random_dna(rng, len));
    std::stringstream ss;
    write_fasta(ss, ref, 60);
    const Reference back = load_fasta(ss);
    EXPECT_EQ(std::vector<Base>(back.bases().begin(), back.bases().end()),
              std::vector<Base>(ref.bases().begin(), ref.bases().end()));
  }
}

TEST(ParseQueries, SequentialIdsAndBlankLines) {
  std::istringstream in("AC\n\nATTA\r\n");
  const auto qs = parse_queries(in);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].id, 0u);
  EXPECT_EQ(qs[1].id, 1u);
  EXPECT_EQ(decode_sequence(qs[1].bases), "ATTA");
  EXPECT_TRUE(qs[0].valid());
}

TEST(ParseQueries, EmptyInput) {
  std::istringstream in("");
  EXPECT_TRUE(parse_queries(in).empty());
}

TEST(ParseQueries, InvalidQueryIsFlaggedNotFatal) {
  std::istringstream in("ACN\nGG\n");
  const auto qs = parse_queries(in);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_FALSE(qs[0].valid());
  EXPECT_NE(qs[0].error.find("'N'"), std::string::npos);
  EXPECT_TRUE(qs[1].valid());
}

TEST(GenerateQueries, SingleWindow) {
  const Reference ref = oracle::reference("ATACGAC");
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const auto qs = generate_queries(ref, 7, 1, seed);
    ASSERT_EQ(qs.size(), 1u);
    EXPECT_EQ(decode_sequence(qs[0].bases), "ATACGAC");
  }
}

TEST(GenerateQueries, DeterministicForSeed) {
  std::mt19937_64 rng(5);
  const Reference ref = oracle::reference(oracle::random_dna(rng, 5000));
  const auto a = generate_queries(ref, 21, 1000, 1);
  const auto b = generate_queries(ref, 21, 1000, 1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].bases, b[i].bases);
  const auto c = generate_queries(ref, 21, 1000, 2);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i].bases == c[i].bases;
  EXPECT_LT(same, 50u);
}

TEST(GenerateQueries, AlwaysMatchUnderOracle) {
  std::mt19937_64 rng(8);
  const std::string text = oracle::random_dna(rng, 400);
  const Reference ref = oracle::reference(text);
  const auto m = oracle::bw_matrix(ref.to_string());
  for (const auto& q : generate_queries(ref, 9, 300, 4)) {
    const auto iv = oracle::interval(m, decode_sequence(q.bases));
    EXPECT_LT(iv.first, iv.second);
  }
}

TEST(GenerateQueries, LengthTooLarge) {
  const Reference ref = oracle::reference("ACGT");
  EXPECT_THROW(generate_queries(ref, 5, 1, 0), ParameterError);
  EXPECT_THROW(generate_queries(ref, 0, 1, 0), ParameterError);
  EXPECT_NO_THROW(generate_queries(ref, 4, 3, 0));
}
