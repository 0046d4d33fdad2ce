#include "sqrtwell/afm.hpp"
#include "sqrtwell/core.hpp"
#include "sqrtwell/exact.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace sqrtwell;

TEST(Reduce, IdentityScalingForReducedParameters)
{
    const auto r = reduce({2.0, 1.0, 1.0});
    EXPECT_DOUBLE_EQ(r.beta, 1.0);
    EXPECT_DOUBLE_EQ(r.scale, 1.0);

    const auto zero = reduce({2.0, 1.0, 0.0});
    EXPECT_EQ(zero.beta, 0.0);
    EXPECT_DOUBLE_EQ(zero.scale, 1.0);
}

TEST(Reduce, GeneralParameters)
{
    const auto r = reduce({1.0, 2.0, 3.0});
    EXPECT_NEAR(r.beta, 0.75, 1e-15);
    EXPECT_NEAR(r.scale, 2.0, 1e-15);
}

TEST(Reduce, CrossCheckedWithExactSolver)
{
    // E(m=1, a=2, b=3) = 2 eps(0.75)
    const auto physical = exact::solve_physical({1.0, 2.0, 3.0}, {0, 0});
    const auto reduced = exact::solve_reduced(0.75, {0, 0});
    EXPECT_NEAR(physical.value(), 2.0 * reduced.value(), 1e-12);
}

TEST(Reduce, RejectsInvalidParameters)
{
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(reduce({0.0, 1.0, 1.0}), invalid_input);
    EXPECT_THROW(reduce({2.0, 0.0, 1.0}), invalid_input);
    EXPECT_THROW(reduce({2.0, 1.0, -1.0}), invalid_input);
    EXPECT_THROW(reduce({inf, 1.0, 1.0}), invalid_input);
    EXPECT_THROW(reduce({2.0, nan, 1.0}), invalid_input);
    EXPECT_THROW(reduce({2.0, 1.0, inf}), invalid_input);
}

TEST(Reduce, ScaleCovarianceInSlope)
{
    const PotentialParams base{1.3, 0.7, 2.9};
    const auto r0 = reduce(base);
    for (double s : {0.1, 0.5, 3.0, 17.0}) {
        const auto r = reduce({base.m, s * base.a, base.b});
        EXPECT_NEAR(r.beta / r0.beta, std::pow(s, -4.0 / 3.0), 1e-12 * std::pow(s, -4.0 / 3.0));
        EXPECT_NEAR(r.scale / r0.scale, std::pow(s, 2.0 / 3.0), 1e-12 * std::pow(s, 2.0 / 3.0));
    }
}

TEST(Unreduce, MultipliesByScale)
{
    EXPECT_DOUBLE_EQ(unreduce(1.91247, {1.0, 1.0}), 1.91247);
    EXPECT_EQ(unreduce(0.0, {3.0, 7.5}), 0.0);
    EXPECT_NEAR(unreduce(1.472899, {0.0, 2.0}), 2.945798, 1e-15);
    EXPECT_THROW(unreduce(std::numeric_limits<double>::infinity(), {0.0, 1.0}), invalid_input);
}

TEST(Unreduce, RoundTripThroughClosedForm)
{
    for (const PotentialParams p : {PotentialParams{1.0, 2.0, 3.0}, PotentialParams{0.3, 5.0, 0.01},
                                    PotentialParams{7.0, 0.2, 40.0}, PotentialParams{2.0, 1.0, 0.0}}) {
        const auto reduced = reduce(p);
        for (const QuantumNumbers qn : {QuantumNumbers{0, 0}, QuantumNumbers{2, 3}}) {
            const double direct = afm::afm_energy(p, qn, afm::PrincipalN::harmonic()).value();
            const double via_reduced =
                unreduce(afm::afm_energy_reduced(reduced.beta, qn, afm::PrincipalN::harmonic()), reduced).value();
            EXPECT_NEAR(via_reduced, direct, 1e-12 * direct);
        }
    }
}

TEST(EnergyEstimate, KeepsKindAndRejectsNonFinite)
{
    const EnergyEstimate e(1.5, EstimateKind::LowerBound);
    EXPECT_EQ(e.kind(), EstimateKind::LowerBound);
    EXPECT_EQ(e.scaled(2.0).value(), 3.0);
    EXPECT_EQ(e.scaled(2.0).kind(), EstimateKind::LowerBound);
    EXPECT_THROW(EnergyEstimate(std::numeric_limits<double>::quiet_NaN(), EstimateKind::Exact), numerical_failure);
    EXPECT_EQ(to_string(EstimateKind::UpperBound), "UpperBound");
}

TEST(QuantumNumbers, RejectsNegative)
{
    EXPECT_THROW((QuantumNumbers{-1, 0}.validate()), invalid_input);
    EXPECT_THROW((QuantumNumbers{0, -2}.validate()), invalid_input);
    EXPECT_NO_THROW((QuantumNumbers{3, 0}.validate()));
}
