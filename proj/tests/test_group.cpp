#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "aprat/constructions.hpp"
#include "aprat/subgroups.hpp"

using namespace aprat;

namespace {

// Oracle: class sizes by conjugating with every group element.
std::multiset<std::uint64_t> brute_class_sizes(const Group& g) {
  std::vector<char> seen(g.order(), 0);
  std::multiset<std::uint64_t> sizes;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    std::set<std::size_t> orbit;
    Permutation x = g.element_perm(i);
    for (std::size_t j = 0; j < g.order(); ++j) orbit.insert(*g.index_of(x.conjugate_by(g.element_perm(j))));
    for (auto o : orbit) seen[o] = 1;
    sizes.insert(orbit.size());
  }
  return sizes;
}

std::uint64_t brute_centralizer_order(const Group& g, const Permutation& x) {
  std::uint64_t c = 0;
  for (std::size_t j = 0; j < g.order(); ++j) {
    Permutation y = g.element_perm(j);
    if (x * y == y * x) ++c;
  }
  return c;
}

}  // namespace

TEST(Group, Sym3FromTranspositionAndThreeCycle) {
  Group g = Group::generate(3, {Permutation::from_cycles(3, {{0, 1}}), Permutation::from_cycles(3, {{0, 1, 2}})});
  EXPECT_EQ(g.order(), 6u);
}

TEST(Group, EmptyGeneratorsGiveTrivialGroup) {
  Group g = Group::generate(4, {});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.num_classes(), 1u);
}

TEST(Group, DegreeMismatchRejected) {
  EXPECT_THROW(Group::generate(4, {Permutation::from_cycles(3, {{0, 1}})}), InputError);
}

TEST(Group, InvalidPermutationRejected) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), std::invalid_argument);
}

TEST(Group, SL25OnNonzeroVectors) {
  // Oracle: count determinant-one matrices over F_5 directly.
  int det_one = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        for (int d = 0; d < 5; ++d)
          if (((a * d - b * c) % 5 + 5) % 5 == 1) ++det_one;
  Group g = construct::sl2_5();
  EXPECT_EQ(g.degree(), 24u);
  EXPECT_EQ(g.order(), static_cast<std::uint64_t>(det_one));
  EXPECT_EQ(g.order(), 120u);
  EXPECT_EQ(g.num_classes(), 9u);
}

TEST(Classes, Sym3) {
  Group g = construct::symmetric(3);
  const auto& cl = g.classes();
  ASSERT_EQ(cl.size(), 3u);
  EXPECT_EQ(cl[0].size, 1u);
  EXPECT_EQ(cl[1].size, 3u);
  EXPECT_EQ(cl[2].size, 2u);
  EXPECT_EQ(brute_class_sizes(g), (std::multiset<std::uint64_t>{1, 2, 3}));
}

TEST(Classes, CyclicHasSingletons) {
  for (std::size_t n : {1u, 5u, 12u}) {
    Group g = construct::cyclic(n);
    EXPECT_EQ(g.num_classes(), n);
    for (const auto& k : g.classes()) EXPECT_EQ(k.size, 1u);
  }
}

TEST(Classes, Sym4HasFiveClasses) {
  Group g = construct::symmetric(4);
  EXPECT_EQ(g.num_classes(), 5u);
  std::multiset<std::uint64_t> sizes;
  for (const auto& k : g.classes()) sizes.insert(k.size);
  EXPECT_EQ(sizes, brute_class_sizes(g));
}

TEST(Classes, RepresentativeIsLexMinimal) {
  Group g = construct::symmetric(4);
  for (std::size_t i = 0; i < g.order(); ++i) {
    Permutation x = g.element_perm(i);
    EXPECT_LE(g.classes()[g.class_of(x)].representative, x);
  }
}

TEST(Classes, SortedByOrderThenSize) {
  Group g = construct::alternating(5);
  const auto& cl = g.classes();
  for (std::size_t i = 1; i < cl.size(); ++i) {
    auto a = std::make_pair(cl[i - 1].element_order, cl[i - 1].size);
    auto b = std::make_pair(cl[i].element_order, cl[i].size);
    EXPECT_LE(a, b);
  }
}

TEST(Classes, ClassEquationOnConstructions) {
  std::vector<Group> gs{construct::symmetric(5), construct::dihedral(7), construct::quaternion8(),
                        construct::frobenius(13, 1, 4), construct::sl2_5(), construct::alternating(6)};
  for (const auto& g : gs) {
    std::uint64_t total = 0;
    for (const auto& k : g.classes()) {
      total += k.size;
      EXPECT_EQ(g.order() % k.size, 0u);
    }
    EXPECT_EQ(total, g.order());
  }
}

TEST(Centralizer, Examples) {
  Group s3 = construct::symmetric(3);
  Permutation c3 = Permutation::from_cycles(3, {{0, 1, 2}});
  EXPECT_EQ(centralizer(s3, c3).order(), 3u);
  EXPECT_EQ(centralizer(s3, Permutation::identity(3)).order(), 6u);
  Group s4 = construct::symmetric(4);
  Permutation t = Permutation::from_cycles(4, {{0, 1}});
  EXPECT_EQ(centralizer(s4, t).order(), 4u);
  EXPECT_EQ(brute_centralizer_order(s4, t), 4u);
}

TEST(Centralizer, ElementOutsideGroupRejected) {
  Group a4 = construct::alternating(4);
  EXPECT_THROW(centralizer(a4, Permutation::from_cycles(4, {{0, 1}})), InputError);
}

TEST(Centralizer, OrbitStabilizerOnRandomPairs) {
  std::vector<Group> gs{construct::symmetric(5), construct::dihedral(9), construct::frobenius(11, 1, 5),
                        construct::sl2_5(), construct::quaternion8(), construct::alternating(5),
                        construct::abelian({2, 4}), construct::frobenius(7, 2, 3)};
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const Group& g = gs[trial % gs.size()];
    Permutation x = g.element_perm(rng() % g.order());
    auto c = g.class_of(x);
    EXPECT_EQ(g.classes()[c].size * centralizer(g, x).order(), g.order());
    EXPECT_EQ(centralizer(g, x).order(), brute_centralizer_order(g, x));
  }
}

TEST(PowerMap, Examples) {
  Group s3 = construct::symmetric(3);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(s3.power_class(c, 1), c);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(s3.power_class(c, 6), 0u);
  EXPECT_EQ(s3.power_class(1, 2), 0u);  // transpositions
  EXPECT_EQ(s3.power_class(2, 2), 2u);  // 3-cycles
}

TEST(PowerMap, CompositionIsMultiplicative) {
  std::vector<Group> gs{construct::symmetric(5), construct::frobenius(13, 1, 6), construct::abelian({4, 9}),
                        construct::sl2_5()};
  for (const auto& g : gs) {
    auto e = static_cast<std::int64_t>(g.exponent());
    for (std::int64_t m = 1; m < 12; ++m)
      for (std::int64_t m2 = 1; m2 < 12; ++m2)
        for (std::size_t c = 0; c < g.num_classes(); ++c)
          EXPECT_EQ(g.power_class(g.power_class(c, m), m2), g.power_class(c, (m * m2) % e));
  }
}

TEST(Sylow, Examples) {
  EXPECT_EQ(sylow_subgroup(construct::symmetric(4), 2).order(), 8u);
  Group c6 = construct::cyclic(6);
  Group p3 = sylow_subgroup(c6, 3);
  EXPECT_EQ(p3.order(), 3u);
  EXPECT_EQ(sylow_subgroup(construct::alternating(5), 5).order(), 5u);
  EXPECT_EQ(sylow_subgroup(construct::alternating(5), 7).order(), 1u);
}

TEST(Sylow, ConjugatesCoverAllSylowSubgroupsFoundByBruteForce) {
  // Brute force: every subgroup of full p-power order generated by at most three p-elements.
  std::vector<std::pair<Group, std::uint64_t>> cases{
      {construct::symmetric(4), 2}, {construct::symmetric(4), 3}, {construct::alternating(5), 2},
      {construct::dihedral(6), 2},  {construct::sl2_5(), 2},      {construct::frobenius(7, 1, 6), 3}};
  for (const auto& [g, p] : cases) {
    std::uint64_t target = detail::p_part(g.order(), p);
    Group syl = sylow_subgroup(g, p);
    ASSERT_EQ(syl.order(), target);
    auto key = [](const Group& h) {
      std::set<std::vector<Point>> s;
      for (std::size_t i = 0; i < h.order(); ++i) s.insert(h.element_perm(i).image_vector());
      return s;
    };
    std::set<std::set<std::vector<Point>>> conjugates;
    for (std::size_t i = 0; i < g.order(); ++i) {
      std::vector<Permutation> gens;
      for (const auto& s : syl.generators()) gens.push_back(s.conjugate_by(g.element_perm(i)));
      conjugates.insert(key(g.subgroup(gens)));
    }
    std::vector<Permutation> pelts;
    for (std::size_t i = 1; i < g.order(); ++i)
      if (detail::p_part(g.element_perm(i).order(), p) == g.element_perm(i).order())
        pelts.push_back(g.element_perm(i));
    std::set<std::set<std::vector<Point>>> found;
    for (std::size_t a = 0; a < pelts.size(); ++a)
      for (std::size_t b = a; b < pelts.size(); ++b) {
        Group h = g.subgroup({pelts[a], pelts[b]});
        if (h.order() == target) found.insert(key(h));
        if (h.order() * p == target || h.order() * p * p == target) {
          for (std::size_t c = b; c < pelts.size() && h.order() < target; ++c) {
            Group h3 = g.subgroup({pelts[a], pelts[b], pelts[c]});
            if (h3.order() == target) found.insert(key(h3));
          }
        }
      }
    EXPECT_FALSE(found.empty());
    for (const auto& f : found) EXPECT_TRUE(conjugates.count(f)) << "p=" << p;
    EXPECT_EQ(conjugates.size() % p, 1u % p);
  }
}

TEST(Normalizer, Examples) {
  Group s4 = construct::symmetric(4);
  Group a4 = construct::alternating(4);
  EXPECT_EQ(normalizer(s4, s4.subgroup(a4.generators())).order(), 24u);
  EXPECT_EQ(normalizer(s4, s4.subgroup({Permutation::from_cycles(4, {{0, 1, 2, 3}})})).order(), 8u);
  Group a5 = construct::alternating(5);
  EXPECT_EQ(normalizer(a5, sylow_subgroup(a5, 5)).order(), 10u);
}

TEST(Normalizer, SubgroupMustBeContained) {
  Group a4 = construct::alternating(4);
  Group s4 = construct::symmetric(4);
  EXPECT_THROW(normalizer(a4, s4), InputError);
}

TEST(CharacteristicSubgroups, Frattini) {
  EXPECT_EQ(frattini_subgroup(construct::cyclic(27), 3).order(), 9u);
  EXPECT_EQ(frattini_subgroup(construct::cyclic(2), 2).order(), 1u);
  EXPECT_EQ(frattini_subgroup(construct::abelian({3, 3, 3}), 3).order(), 1u);
  EXPECT_EQ(frattini_subgroup(construct::dihedral(4), 2).order(), 2u);
  EXPECT_THROW(frattini_subgroup(construct::symmetric(3), 3), InputError);
}

TEST(CharacteristicSubgroups, Derived) {
  Group q8 = construct::quaternion8();
  Group d = derived_subgroup(q8);
  EXPECT_EQ(d.order(), 2u);
  // Q8' is the centre: it commutes with everything.
  for (const auto& z : d.generators())
    for (const auto& g : q8.generators()) EXPECT_EQ(z * g, g * z);
  EXPECT_EQ(derived_subgroup(construct::symmetric(4)).order(), 12u);
  EXPECT_EQ(derived_subgroup(construct::alternating(5)).order(), 60u);
}

TEST(CharacteristicSubgroups, PPrimeCore) {
  EXPECT_EQ(p_prime_core(construct::symmetric(4), 3).order(), 4u);
  EXPECT_EQ(p_prime_core(construct::symmetric(4), 2).order(), 1u);
  EXPECT_EQ(p_prime_core(construct::frobenius(7, 1, 3), 3).order(), 7u);
  EXPECT_EQ(p_prime_core(construct::alternating(5), 5).order(), 1u);
}

TEST(Quotient, Examples) {
  Group s4 = construct::symmetric(4);
  Group v4 = s4.subgroup({Permutation::from_cycles(4, {{0, 1}, {2, 3}}), Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  Group q = quotient_group(s4, v4);
  EXPECT_EQ(q.order(), 6u);
  EXPECT_EQ(q.num_classes(), 3u);
  EXPECT_EQ(quotient_group(s4, s4).order(), 1u);
  Group c4 = construct::cyclic(4);
  Group c2 = c4.subgroup({c4.generators()[0].pow(2)});
  Group q2 = quotient_group(c4, c2);
  EXPECT_EQ(q2.order(), 2u);
}

TEST(Quotient, NonNormalRejected) {
  Group s3 = construct::symmetric(3);
  EXPECT_THROW(quotient_group(s3, s3.subgroup({Permutation::from_cycles(3, {{0, 1}})})), InputError);
}

TEST(Quotient, ClassNumberDoesNotGrow) {
  std::vector<Group> gs{construct::symmetric(4), construct::sl2_5(), construct::frobenius(13, 1, 6),
                        construct::dihedral(12)};
  for (const auto& g : gs) {
    Group d = derived_subgroup(g);
    Group q = quotient_group(g, d);
    EXPECT_EQ(q.order() * d.order(), g.order());
    EXPECT_LE(q.num_classes(), g.num_classes());
  }
}

TEST(Constructions, Frobenius) {
  Group f = construct::frobenius(5, 1, 4);
  EXPECT_EQ(f.order(), 20u);
  EXPECT_EQ(f.num_classes(), 5u);
  EXPECT_EQ(construct::frobenius(17, 1, 4).order(), 68u);
  EXPECT_EQ(construct::frobenius(5, 2, 2).degree(), 25u);
  EXPECT_THROW(construct::frobenius(7, 1, 4), InputError);
  EXPECT_THROW(construct::frobenius(9, 1, 2), InputError);
}

TEST(Constructions, AffineSL25OverF11) {
  auto gens = construct::sl2_5_generators(11);
  Group h = construct::matrix_group(11, 2, gens);
  ASSERT_EQ(h.order(), 120u);
  EXPECT_TRUE(same_class_fingerprint(h, construct::sl2_5()));
  Group g = construct::elementary_abelian_semidirect(11, 2, gens);
  EXPECT_EQ(g.order(), 14520u);
}

TEST(Constructions, Solvability) {
  EXPECT_TRUE(is_solvable(construct::symmetric(4)));
  EXPECT_FALSE(is_solvable(construct::alternating(5)));
  EXPECT_FALSE(is_solvable(construct::sl2_5()));
  EXPECT_TRUE(is_cyclic(construct::cyclic(9)));
  EXPECT_FALSE(is_cyclic(construct::abelian({3, 3})));
}
