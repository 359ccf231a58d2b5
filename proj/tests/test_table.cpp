#include <gtest/gtest.h>

#include <set>

#include "aprat/character_table.hpp"
#include "aprat/constructions.hpp"
#include "aprat/subgroups.hpp"
#include "oracles.hpp"

using namespace aprat;

namespace {

std::vector<Group> small_groups() {
  return {construct::cyclic(1),         construct::cyclic(7),          construct::symmetric(3),
          construct::symmetric(4),      construct::alternating(4),     construct::alternating(5),
          construct::dihedral(5),       construct::dihedral(8),        construct::quaternion8(),
          construct::frobenius(5, 1, 4), construct::frobenius(7, 1, 3), construct::frobenius(13, 1, 4),
          construct::sl2_5(),           construct::abelian({3, 9}),    construct::metacyclic(9, 4),
          construct::direct_product({construct::symmetric(3), construct::cyclic(4)})};
}

std::size_t row_with_value(const CharacterTable& t, std::size_t cls, const CyclotomicValue& v) {
  for (std::size_t r = 0; r < t.size(); ++r)
    if (t.value(r, cls) == v) return r;
  return t.size();
}

}  // namespace

TEST(Table, Sym4Degrees) {
  CharacterTable t(construct::symmetric(4));
  EXPECT_EQ(t.degrees(), (std::vector<std::uint64_t>{1, 1, 2, 3, 3}));
  EXPECT_TRUE(oracle::rows_satisfy_class_algebra(t));
  for (std::size_t r = 0; r < t.size(); ++r) EXPECT_TRUE(t.row_is_rational(r));
  // degree-2 row vanishes on transpositions
  std::size_t transp = construct::symmetric(4).class_of(Permutation::from_cycles(4, {{0, 1}}));
  EXPECT_EQ(t.value(2, transp), CyclotomicValue::integer(t.exponent(), 0));
}

TEST(Table, TrivialGroup) {
  CharacterTable t(construct::cyclic(1));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.degrees()[0], 1u);
  EXPECT_TRUE(t.verify_orthogonality().ok);
}

TEST(Table, CyclicGroupIsDualGroup) {
  for (std::uint64_t n : {5u, 8u, 12u}) {
    Group g = construct::cyclic(n);
    CharacterTable t(g);
    ASSERT_EQ(t.size(), n);
    Permutation gen = g.generators()[0];
    // expected rows j: g^k -> zeta_n^{jk}
    std::set<std::vector<CyclotomicValue>> expected, got;
    for (std::uint64_t j = 0; j < n; ++j) {
      std::vector<CyclotomicValue> row(n);
      for (std::uint64_t k = 0; k < n; ++k)
        row[g.class_of(gen.pow(static_cast<std::int64_t>(k)))] = CyclotomicValue::from_terms(n, {{j * k % n, 1}});
      expected.insert(row);
    }
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<CyclotomicValue> row;
      for (std::size_t c = 0; c < n; ++c) row.push_back(t.value(r, c));
      got.insert(row);
    }
    EXPECT_EQ(got, expected);
  }
}

TEST(Table, Q8) {
  CharacterTable t(construct::quaternion8());
  EXPECT_EQ(t.degrees(), (std::vector<std::uint64_t>{1, 1, 1, 1, 2}));
  for (std::size_t r = 0; r < t.size(); ++r) EXPECT_TRUE(t.row_is_rational(r));
  EXPECT_TRUE(oracle::rows_satisfy_class_algebra(t));
}

TEST(Table, TrivialCharacterFirstAndSortedRows) {
  for (const auto& g : small_groups()) {
    CharacterTable t(g);
    for (std::size_t c = 0; c < t.size(); ++c) EXPECT_EQ(t.value(0, c), CyclotomicValue::integer(t.exponent(), 1));
    for (std::size_t r = 2; r < t.size(); ++r) EXPECT_LE(t.degrees()[r - 1], t.degrees()[r]);
  }
}

TEST(Table, InvariantsAndClassAlgebraOnSmallGroups) {
  for (const auto& g : small_groups()) {
    CharacterTable t(g);
    EXPECT_EQ(t.size(), g.num_classes());
    auto rep = t.verify_orthogonality();
    EXPECT_TRUE(rep.ok) << (rep.violations.empty() ? "" : rep.violations[0]);
    EXPECT_EQ(rep.sum_of_squares, g.order());
    EXPECT_TRUE(oracle::rows_satisfy_class_algebra(t)) << g.order();
    for (std::size_t r = 0; r < t.size(); ++r)
      for (std::size_t c = 0; c < t.size(); ++c) {
        std::uint64_t tot = 0;
        for (auto e : t.eigenvalues(r, c)) tot += e.multiplicity;
        EXPECT_EQ(tot, t.degrees()[r]);
      }
  }
}

TEST(Table, AffineNavarroGroup) {
  auto gens = construct::sl2_5_generators(11);
  Group h = construct::matrix_group(11, 2, gens);
  ASSERT_EQ(h.order(), 120u);
  CharacterTable t(construct::elementary_abelian_semidirect(11, 2, gens));
  EXPECT_EQ(t.size(), 10u);
  EXPECT_TRUE(t.verify_orthogonality().ok);
  auto b = t.block_distribution(11);
  EXPECT_EQ(b.num_blocks, 1u);
}

TEST(Table, DeterministicAcrossRuns) {
  CharacterTable a(construct::alternating(5)), b(construct::alternating(5));
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) EXPECT_EQ(a.value(r, c), b.value(r, c));
}

TEST(Table, ReplayFromEigenvalueData) {
  CharacterTable a(construct::frobenius(13, 1, 4));
  std::vector<std::vector<std::vector<EigenTerm>>> terms(a.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) terms[r].emplace_back(a.eigenvalues(r, c).begin(), a.eigenvalues(r, c).end());
  CharacterTable b(a.group(), a.dixon_prime(), a.degrees(), terms);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) EXPECT_EQ(a.value_mod(r, c), b.value_mod(r, c));
  terms[0][0][0].multiplicity = 2;
  EXPECT_THROW(CharacterTable(a.group(), a.dixon_prime(), a.degrees(), terms), std::invalid_argument);
}

TEST(Galois, IdentityAndRationalRows) {
  CharacterTable t(construct::symmetric(4));
  for (std::size_t r = 0; r < t.size(); ++r) {
    EXPECT_EQ(t.galois_conjugate_row(r, 1), r);
    EXPECT_EQ(t.galois_conjugate_row(r, 5), r);
  }
  EXPECT_THROW(t.galois_conjugate_row(0, 2), InputError);
}

TEST(Galois, C5SquaringMapsChi1ToChi2) {
  Group g = construct::cyclic(5);
  CharacterTable t(g);
  std::size_t gen = g.class_of(g.generators()[0]);
  std::size_t chi1 = row_with_value(t, gen, CyclotomicValue::from_terms(5, {{1, 1}}));
  std::size_t chi2 = row_with_value(t, gen, CyclotomicValue::from_terms(5, {{2, 1}}));
  ASSERT_LT(chi1, 5u);
  ASSERT_LT(chi2, 5u);
  EXPECT_EQ(t.galois_conjugate_row(chi1, 2), chi2);
}

TEST(Galois, MatchesExactGaloisActionOnValues) {
  for (const auto& g : small_groups()) {
    CharacterTable t(g);
    const auto n = static_cast<std::int64_t>(t.exponent());
    for (std::int64_t m = 1; m < n; ++m) {
      if (std::gcd(m, n) != 1) continue;
      for (std::size_t r = 0; r < t.size(); ++r) {
        std::size_t s = t.galois_conjugate_row(r, m);
        for (std::size_t c = 0; c < t.size(); ++c) EXPECT_EQ(t.value(s, c), t.value(r, c).galois(m));
      }
    }
  }
}

TEST(Galois, BrauerPermutationLemmaAndOrder) {
  for (const auto& g : small_groups()) {
    CharacterTable t(g);
    const auto n = static_cast<std::int64_t>(t.exponent());
    for (std::int64_t m = 1; m < n; ++m) {
      if (std::gcd(m, n) != 1) continue;
      std::size_t fixed_rows = 0, fixed_classes = 0;
      std::set<std::size_t> image;
      for (std::size_t r = 0; r < t.size(); ++r) {
        auto s = t.galois_conjugate_row(r, m);
        image.insert(s);
        fixed_rows += (s == r);
        fixed_classes += (g.power_class(r, m) == r);
      }
      EXPECT_EQ(image.size(), t.size());
      EXPECT_EQ(fixed_rows, fixed_classes);
      auto ord = multiplicative_order(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n));
      for (std::size_t r = 0; r < t.size(); ++r) {
        std::size_t x = r;
        for (std::uint64_t i = 0; i < ord; ++i) x = t.galois_conjugate_row(x, m);
        EXPECT_EQ(x, r);
      }
    }
  }
}

TEST(Blocks, Sym4PrimeThree) {
  CharacterTable t(construct::symmetric(4));
  auto b = t.block_distribution(3);
  EXPECT_EQ(b.num_blocks, 3u);
  std::multiset<std::uint64_t> principal;
  for (std::size_t r = 0; r < t.size(); ++r)
    if (b.block_of[r] == b.principal_block_id) principal.insert(t.degrees()[r]);
  EXPECT_EQ(principal, (std::multiset<std::uint64_t>{1, 1, 2}));
  EXPECT_NE(b.block_of[3], b.block_of[4]);
  EXPECT_EQ(b.principal_block_id, b.block_of[0]);
}

TEST(Blocks, CoprimePrimeIsDegenerate) {
  CharacterTable t(construct::symmetric(4));
  auto b = t.block_distribution(5);
  EXPECT_TRUE(b.degenerate);
  EXPECT_EQ(b.num_blocks, t.size());
  EXPECT_EQ(b.principal_block_id, b.block_of[0]);
}

TEST(Blocks, Alt5) {
  CharacterTable t(construct::alternating(5));
  auto deg_of_principal = [&](std::uint64_t p) {
    auto b = t.block_distribution(p);
    std::multiset<std::uint64_t> s;
    for (std::size_t r = 0; r < t.size(); ++r)
      if (b.block_of[r] == b.principal_block_id) s.insert(t.degrees()[r]);
    return s;
  };
  EXPECT_EQ(deg_of_principal(2), (std::multiset<std::uint64_t>{1, 3, 3, 5}));
  EXPECT_EQ(deg_of_principal(3), (std::multiset<std::uint64_t>{1, 4, 5}));
  EXPECT_EQ(deg_of_principal(5), (std::multiset<std::uint64_t>{1, 3, 3, 4}));
}

TEST(Blocks, AgreeWithOrthogonalityLinkageOracle) {
  for (const auto& g : small_groups()) {
    CharacterTable t(g);
    for (auto p : prime_divisors(g.order())) {
      auto b = t.block_distribution(p);
      EXPECT_EQ(oracle::relabel(b.block_of), oracle::osima_blocks(t, p)) << "order " << g.order() << " p=" << p;
    }
  }
}

TEST(Blocks, PGroupsHaveOneBlock) {
  for (const auto& g : {construct::quaternion8(), construct::dihedral(8), construct::abelian({3, 9})}) {
    CharacterTable t(g);
    EXPECT_EQ(t.block_distribution(prime_divisors(g.order())[0]).num_blocks, 1u);
  }
}

TEST(Blocks, ReducedInConductorField) {
  for (const auto& g : {construct::frobenius(29, 1, 28), construct::frobenius(31, 1, 30),
                        construct::direct_product({construct::symmetric(3), construct::cyclic(15)}),
                        construct::elementary_abelian_semidirect(11, 2, construct::sl2_5_generators(11))}) {
    CharacterTable t(g);
    std::uint64_t m = 1;
    for (std::size_t r = 0; r < t.size(); ++r) m = std::lcm(m, oracle::row_conductor(t, r));
    EXPECT_EQ(t.conductor(), m);
    for (auto p : prime_divisors(g.order())) {
      auto b = t.block_distribution(p);
      std::uint64_t nq = t.exponent(), mq = m;
      while (nq % p == 0) nq /= p;
      while (mq % p == 0) mq /= p;
      std::size_t full = nq == 1 ? 1 : multiplicative_order(p % nq, nq);
      std::size_t small = mq == 1 ? 1 : multiplicative_order(p % mq, mq);
      EXPECT_EQ(b.field_degree, std::min(full, small));
      EXPECT_EQ(oracle::relabel(b.block_of), oracle::osima_blocks(t, p)) << "order " << g.order() << " p=" << p;
    }
  }
}
