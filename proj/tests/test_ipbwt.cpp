#include <gtest/gtest.h>

#include <tuple>

#include "lisa/error.hpp"
#include "lisa/fmindex.hpp"
#include "lisa/ipbwt.hpp"
#include "oracle.hpp"

using namespace lisa;

namespace {

IpBwt make_ipbwt(const Reference& ref, unsigned k) { return IpBwt(ref, build_suffix_array(ref), k); }

KmerLoc kl(std::string_view kmer, std::uint64_t loc) { return {make_kmer(kmer), loc}; }

std::uint64_t fm_compose(const FmIndex& fm, const std::string& s, std::uint64_t i) {
  for (std::size_t j = s.size(); j-- > 0;) i = fm.fm_step(encode_base(s[j]), i);
  return i;
}

}  // namespace

TEST(EncodeKey, Goldens) {
  EXPECT_EQ(encode_key(make_kmer("AAA"), 0, 3), EncodedKey{0});
  EXPECT_EQ(encode_key(make_kmer("ATT"), 5, 3), EncodedKey{64424509445ULL});
  // sentinel shares code 0 with A
  EXPECT_EQ(encode_key(make_kmer("A$A"), 0, 3), encode_key(make_kmer("AAA"), 0, 3));
}

TEST(EncodeKey, OrderIsomorphicWithoutSentinel) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<std::uint64_t> loc(0, 0xffffffffULL);
  for (int trial = 0; trial < 10000; ++trial) {
    const unsigned k = 1 + trial % kMaxK;
    const KmerLoc a = kl(oracle::random_dna(rng, k), loc(rng) % (trial % 3 ? 8 : 0x100000000ULL));
    const KmerLoc b = kl(oracle::random_dna(rng, k), loc(rng) % (trial % 3 ? 8 : 0x100000000ULL));
    EXPECT_EQ(true_compare(a, b, k), encode_key(a.kmer, a.loc, k) <=> encode_key(b.kmer, b.loc, k));
  }
}

TEST(TrueCompare, SentinelAndLocTieBreak) {
  EXPECT_EQ(true_compare(kl("A$A", 0), kl("AAA", 0), 3), std::strong_ordering::less);
  EXPECT_EQ(true_compare(kl("ATT", 1), kl("ATT", 5), 3), std::strong_ordering::less);
  EXPECT_EQ(true_compare(kl("$TT", 9), kl("AAA", 0), 3), std::strong_ordering::less);
  EXPECT_EQ(true_compare(kl("AC$", 9), kl("AC$", 9), 3), std::strong_ordering::equal);
  EXPECT_EQ(true_compare(kl("AC$", 0), kl("ACA", 0), 3), std::strong_ordering::less);
}

TEST(TrueCompare, MatchesStringOrderOverRandomTriples) {
  // With '$' < 'A' in ASCII, (kmer string, loc) tuples give the reference order.
  std::mt19937_64 rng(12);
  auto random_kmer = [&](unsigned k) {
    std::string s = oracle::random_dna(rng, k, 2);
    if (rng() % 2) s[rng() % k] = '$';
    return s;
  };
  for (int trial = 0; trial < 3000; ++trial) {
    const unsigned k = 1 + trial % 6;
    std::string sa = random_kmer(k), sb = random_kmer(k), sc = random_kmer(k);
    const std::uint64_t la = rng() % 3, lb = rng() % 3, lc = rng() % 3;
    const auto a = kl(sa, la), b = kl(sb, lb), c = kl(sc, lc);
    EXPECT_EQ(true_compare(a, b, k), std::tie(sa, la) <=> std::tie(sb, lb));
    EXPECT_EQ(true_compare(a, b, k), 0 <=> true_compare(b, a, k));  // antisymmetry
    if (true_compare(a, b, k) < 0 && true_compare(b, c, k) < 0) {
      EXPECT_TRUE(true_compare(a, c, k) < 0);
    }
  }
}

TEST(IpBwt, WorkedExampleEntries) {
  const Reference ref = oracle::reference("CATTATTAGGA");
  const IpBwt ip = make_ipbwt(ref, 3);
  EXPECT_EQ(ip.size(), 12u);
  EXPECT_EQ(ip.k(), 3u);
  EXPECT_EQ(ip.sentinel_rows().size(), 3u);
  const auto expect = oracle::ipbwt(oracle::bw_matrix(ref.to_string()), 3);
  for (std::size_t i = 0; i < ip.size(); ++i) {
    EXPECT_EQ(kmer_string(ip.entry(i).kmer, 3), expect[i].kmer);
    EXPECT_EQ(ip.entry(i).loc, expect[i].loc);
  }
}

TEST(IpBwt, WorkedExampleLowerBounds) {
  const IpBwt ip = make_ipbwt(oracle::reference("CATTATTAGGA"), 3);
  EXPECT_EQ(ip.lower_bound(kl("A$A", 0)), 1u);
  EXPECT_EQ(ip.lower_bound(kl("ATT", 12)), 5u);
  EXPECT_EQ(ip.lower_bound(kl("ATT", 1)), 3u);
  EXPECT_EQ(ip.lower_bound(kl("ATT", 5)), 5u);
  EXPECT_EQ(ip.lower_bound(kl("$AA", 0)), 0u);
  EXPECT_EQ(ip.lower_bound(kl("TTT", 12)), 12u);
}

TEST(IpBwt, KEqualsOneStepsLikeFm) {
  const Reference ref = oracle::reference("ATACGAC");
  const IpBwt ip = make_ipbwt(ref, 1);
  const FmIndex fm = FmIndex::build(ref);
  const auto expect = oracle::ipbwt(oracle::bw_matrix(ref.to_string()), 1);
  for (std::size_t i = 0; i < ip.size(); ++i) {
    EXPECT_EQ(ip.entry(i).loc, expect[i].loc);
    EXPECT_EQ(kmer_string(ip.entry(i).kmer, 1), expect[i].kmer);
  }
  for (std::uint64_t i = 0; i <= fm.size(); ++i) {
    for (char c : std::string("ACGT")) {
      EXPECT_EQ(ip.lower_bound(kl(std::string(1, c), i)), fm.fm_step(encode_base(c), i));
    }
  }
}

TEST(IpBwt, EntriesMatchBruteForceRotationLookup) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> len(5, 63);
  for (int trial = 0; trial < 100; ++trial) {
    const Reference ref = oracle::reference(oracle::random_dna(rng, len(rng), 1 + trial % 4));
    const auto m = oracle::bw_matrix(ref.to_string());
    for (unsigned k : {1u, 2u, 3u, 5u}) {
      const IpBwt ip = make_ipbwt(ref, k);
      const auto expect = oracle::ipbwt(m, k);
      for (std::size_t i = 0; i < ip.size(); ++i) {
        ASSERT_EQ(kmer_string(ip.entry(i).kmer, k), expect[i].kmer);
        ASSERT_EQ(ip.entry(i).loc, expect[i].loc);
        EXPECT_EQ(ip.is_sentinel_row(i), expect[i].kmer.find('$') != std::string::npos);
        if (i + 1 < ip.size()) {
          EXPECT_TRUE(true_compare(ip.entry(i), ip.entry(i + 1), k) < 0);
        }
      }
      EXPECT_LE(ip.sentinel_rows().size(), k);
    }
  }
}

TEST(IpBwt, CompositionLawExhaustive) {
  // f_K(s, i) == fm_step applied to s right to left, for every s in {A,C,G,T}^K
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t len = trial < 3 ? 40 : 255;
    const Reference ref = oracle::reference(oracle::random_dna(rng, len, 2 + trial % 3));
    const FmIndex fm = FmIndex::build(ref);
    for (unsigned k = 1; k <= 4; ++k) {
      const IpBwt ip = make_ipbwt(ref, k);
      for (std::uint64_t code = 0; code < (1ULL << (2 * k)); ++code) {
        std::string s(k, 'A');
        for (unsigned j = 0; j < k; ++j) s[j] = "ACGT"[(code >> (2 * (k - 1 - j))) & 3];
        for (std::uint64_t i = 0; i <= fm.size(); ++i) {
          ASSERT_EQ(ip.lower_bound(kl(s, i)), fm_compose(fm, s, i)) << s << " i=" << i;
        }
      }
    }
  }
}

TEST(IpBwt, LowerBoundMatchesOracleWithPaddedProbes) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const Reference ref = oracle::reference(oracle::random_dna(rng, 3 + rng() % 60, 1 + trial % 4));
    const auto m = oracle::bw_matrix(ref.to_string());
    const unsigned k = 1 + static_cast<unsigned>(rng() % std::min<std::size_t>(5, ref.size() - 1));
    const IpBwt ip = make_ipbwt(ref, k);
    const auto entries = oracle::ipbwt(m, k);
    for (int probe = 0; probe < 200; ++probe) {
      std::string s = oracle::random_dna(rng, k, 1 + trial % 4);
      if (probe % 2) s[rng() % k] = '$';
      const std::uint64_t i = rng() % (ref.size() + 1);
      const auto got = ip.lower_bound(kl(s, i));
      EXPECT_EQ(got, oracle::entry_lower_bound(entries, s, i)) << s << " " << i;
      if (probe % 2 == 0) {
        EXPECT_EQ(got, oracle::f_k(m, s, i)) << s << " " << i;
      }
      EXPECT_EQ(ip.linear_lower_bound(rng() % (ref.size() + 1), tagged::make(encode_key(make_kmer(s), i, k), make_kmer(s).sentinel)), got);
      EXPECT_EQ(ip.exponential_lower_bound(rng() % (ref.size() + 1), tagged::make(encode_key(make_kmer(s), i, k), make_kmer(s).sentinel)), got);
    }
  }
}

TEST(IpBwt, Monotone) {
  std::mt19937_64 rng(16);
  const Reference ref = oracle::reference(oracle::random_dna(rng, 200));
  const IpBwt ip = make_ipbwt(ref, 4);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = kl(oracle::random_dna(rng, 4, 2), rng() % 201);
    auto b = kl(oracle::random_dna(rng, 4, 2), rng() % 201);
    if (true_compare(a, b, 4) > 0) std::swap(a, b);
    EXPECT_LE(ip.lower_bound(a), ip.lower_bound(b));
  }
}

TEST(IpBwt, EncodedOrderDisagreesOnlyOnSentinelRows) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Reference ref = oracle::reference(oracle::random_dna(rng, 20 + rng() % 200, 1 + trial % 4));
    const unsigned k = 1 + trial % 6;
    const IpBwt ip = make_ipbwt(ref, k);
    for (std::size_t i = 0; i + 1 < ip.size(); ++i) {
      for (std::size_t j = i + 1; j < std::min(ip.size(), i + 40); ++j) {
        if (ip.is_sentinel_row(i) || ip.is_sentinel_row(j)) continue;
        EXPECT_LT(ip.key(i), ip.key(j));
      }
      EXPECT_LE(ip.route_key(i), ip.route_key(i + 1));
      if (!ip.is_sentinel_row(i)) {
        EXPECT_EQ(ip.route_key(i), ip.key(i));
      }
    }
  }
}

TEST(IpBwt, ParameterValidation) {
  const Reference ref = oracle::reference("ACGT");
  const auto sa = build_suffix_array(ref);
  EXPECT_THROW(IpBwt(ref, sa, 0), ParameterError);
  EXPECT_THROW(IpBwt(ref, sa, 5), ParameterError);
  EXPECT_NO_THROW(IpBwt(ref, sa, 4));
  std::mt19937_64 rng(1);
  const Reference big = oracle::reference(oracle::random_dna(rng, 100));
  EXPECT_THROW(IpBwt(big, build_suffix_array(big), kMaxK + 1), ParameterError);
}
