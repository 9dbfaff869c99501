#include "pacontract/generator.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "pacontract/classify.hpp"

namespace pacontract {
namespace {

TEST(MakeSpace, DiscreteThreePoints) {
    const auto space = make_space(GeneratorSpec{3, SpaceKind::discrete});
    EXPECT_EQ(space.dist, (DistMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    EXPECT_EQ(space.s, 1.0);
    EXPECT_EQ(space.points, (std::vector<std::string>{"0", "1", "2"}));
    EXPECT_TRUE(validate_b_metric(space.dist, space.s).valid);
}

TEST(MakeSpace, LineMetricHasCoefficientOne) {
    const auto space = make_space(GeneratorSpec{3, SpaceKind::power_metric, 1.0});
    EXPECT_EQ(space.dist, (DistMatrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
    EXPECT_EQ(space.s, 1.0);
}

TEST(MakeSpace, SquaredLineHasCoefficientTwo) {
    const auto space = make_space(GeneratorSpec{3, SpaceKind::power_metric, 2.0});
    EXPECT_EQ(space.dist, (DistMatrix{{0, 1, 4}, {1, 0, 1}, {4, 1, 0}}));
    EXPECT_EQ(space.s, 2.0);
}

TEST(MakeSpace, RandomSpacesAreDeterministicPerSeed) {
    const GeneratorSpec spec{5, SpaceKind::random_perturbed, 2.0, 0.5, 42};
    const auto a = make_space(spec);
    const auto b = make_space(spec);
    EXPECT_EQ(a.dist, b.dist);
    EXPECT_EQ(a.s, b.s);

    GeneratorSpec other = spec;
    other.seed = 43;
    EXPECT_NE(make_space(other).dist, a.dist);
}

TEST(MakeSpace, RandomSpacesValidateWithTheirOwnCoefficient) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        GeneratorSpec spec;
        spec.n = 4 + seed % 3;
        spec.kind = SpaceKind::random_perturbed;
        spec.p = 1.0 + static_cast<double>(seed % 5) * 0.5;
        spec.spread = 0.1 + 0.2 * static_cast<double>(seed % 7);
        spec.seed = seed;
        const auto space = make_space(spec);
        EXPECT_TRUE(validate_b_metric(space.dist, space.s).valid) << "seed " << seed;
    }
}

TEST(MakeSpace, RejectsBadSpec) {
    EXPECT_THROW(make_space(GeneratorSpec{0, SpaceKind::discrete}), std::invalid_argument);
    EXPECT_THROW(make_space(GeneratorSpec{3, SpaceKind::power_metric, 0.5}),
                 std::invalid_argument);
    EXPECT_THROW(make_space(GeneratorSpec{3, SpaceKind::random_perturbed, 1.0, -0.1}),
                 std::invalid_argument);
}

TEST(EnumerateMaps, CountsAndOrder) {
    std::size_t count = 0;
    for ([[maybe_unused]] const SelfMap& map : enumerate_maps(1)) ++count;
    EXPECT_EQ(count, 1u);

    std::vector<SelfMap> two;
    for (const SelfMap& map : enumerate_maps(2)) two.push_back(map);
    ASSERT_EQ(two.size(), 4u);
    EXPECT_EQ(two[0].table, (std::vector<Index>{0, 0}));
    EXPECT_EQ(two[1].table, (std::vector<Index>{0, 1}));
    EXPECT_EQ(two[2].table, (std::vector<Index>{1, 0}));
    EXPECT_EQ(two[3].table, (std::vector<Index>{1, 1}));

    std::vector<SelfMap> three;
    for (const SelfMap& map : enumerate_maps(3)) three.push_back(map);
    ASSERT_EQ(three.size(), 27u);
    EXPECT_EQ(three.front().table, (std::vector<Index>{0, 0, 0}));
    EXPECT_EQ(three.back().table, (std::vector<Index>{2, 2, 2}));
    EXPECT_EQ(enumerate_maps(3).size(), 27u);
}

TEST(EnumerateMaps, GuardsAgainstExplosion) {
    EXPECT_NO_THROW(enumerate_maps(6));
    EXPECT_THROW(enumerate_maps(7), std::invalid_argument);
    EXPECT_THROW(enumerate_maps(0), std::invalid_argument);
}

TEST(Census, DiscreteThreeClassCells) {
    const auto space = make_space(GeneratorSpec{3, SpaceKind::discrete});
    std::vector<CensusRecord> records;
    const auto report =
        census(space, [&records](const CensusRecord& r) { records.push_back(r); });

    EXPECT_EQ(report.map_count, 27u);
    EXPECT_EQ(records.size(), 27u);
    EXPECT_EQ(records.front().map.table, (std::vector<Index>{0, 0, 0}));

    EXPECT_EQ(report.banach_not_pa, 0u);
    EXPECT_GE(report.pa_not_banach, 1u);
    EXPECT_GE(report.pa_not_kannan, 1u);
    EXPECT_EQ(report.theorem_violations, 0u);
    EXPECT_TRUE(report.banach_implies_pa_ok);
    EXPECT_TRUE(report.pa_unique_always);

    // The reference map 0 -> 1 -> 2 -> 2 lands in the PA-only cell.
    const auto shift = classify_all(space, SelfMap{{1, 2, 2}});
    EXPECT_TRUE(shift.pa.is_member);
    EXPECT_FALSE(shift.banach.is_member);
    EXPECT_FALSE(shift.kannan.is_member);
    EXPECT_GE(report.cells[1].count, 1u);  // banach=0, kannan=0, pa=1
    ASSERT_TRUE(report.cells[1].witness.has_value());

    // On a discrete space only constant maps are Kannan, so Banach members
    // and Kannan members coincide there and the mixed cells stay empty.
    EXPECT_EQ(report.kannan_not_pa, 0u);
}

TEST(Census, SinglePointSpaceIsTrivial) {
    const auto report = census(make_space(GeneratorSpec{1, SpaceKind::discrete}));
    EXPECT_EQ(report.map_count, 1u);
    EXPECT_EQ(report.cells[7].count, 1u);  // the only map is in every class
    EXPECT_EQ(report.banach_count, 1u);
    EXPECT_EQ(report.kannan_count, 1u);
    EXPECT_EQ(report.pa_count, 1u);
}

TEST(Census, ReportsAreDeterministic) {
    const auto space = make_space(GeneratorSpec{3, SpaceKind::power_metric, 2.0});
    const auto a = census(space);
    const auto b = census(space);
    EXPECT_EQ(a.fingerprint, b.fingerprint);
    EXPECT_EQ(a.pa_count, b.pa_count);
    for (std::size_t cell = 0; cell < a.cells.size(); ++cell) {
        EXPECT_EQ(a.cells[cell].count, b.cells[cell].count);
        EXPECT_EQ(a.cells[cell].witness.has_value(), b.cells[cell].witness.has_value());
        if (a.cells[cell].witness) {
            EXPECT_EQ(a.cells[cell].witness->table, b.cells[cell].witness->table);
        }
    }
}

TEST(Census, FingerprintTracksTheMatrix) {
    const auto a = make_space(GeneratorSpec{3, SpaceKind::discrete});
    const auto b = make_space(GeneratorSpec{3, SpaceKind::power_metric, 2.0});
    EXPECT_NE(space_fingerprint(a), space_fingerprint(b));
    EXPECT_EQ(space_fingerprint(a), space_fingerprint(a));
}

}  // namespace
}  // namespace pacontract
