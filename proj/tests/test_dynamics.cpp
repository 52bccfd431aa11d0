#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ltoc/dynamics.hpp"
#include "ltoc/propagate.hpp"

using namespace ltoc;

namespace {

constexpr double kDeg = kPi / 180.0;

std::mt19937& rng() {
    static std::mt19937 gen(11);
    return gen;
}

SpacecraftState random_state() {
    std::uniform_real_distribution<double> ue(0.0, 0.8);
    std::uniform_real_distribution<double> ui(0.0, 160.0 * kDeg);
    std::uniform_real_distribution<double> uang(0.0, kTwoPi);
    std::uniform_real_distribution<double> ua(0.7, 8.0);
    std::uniform_real_distribution<double> um(0.2, 1.0);
    ClassicalElements coe{ua(rng()), ue(rng()), ui(rng()), uang(rng()), uang(rng()), uang(rng())};
    return SpacecraftState{coe_to_mee(coe), um(rng())};
}

ControlInput random_control() {
    std::uniform_real_distribution<double> ut(0.0, 1.2);
    std::normal_distribution<double> un(0.0, 1.0);
    Eigen::Vector3d dir(un(rng()), un(rng()), un(rng()));
    while (dir.norm() < 1e-3) dir = Eigen::Vector3d(un(rng()), un(rng()), un(rng()));
    return ControlInput{ut(rng()), dir.normalized()};
}

// Cartesian two-body + thrust oracle: time derivative of (r, v) given the
// RTN perturbation components.
Eigen::Matrix<double, 6, 1> cartesian_oracle(const CartesianState& cs, const Perturbation& d,
                                             double mu) {
    const Eigen::Vector3d rhat = cs.r.normalized();
    const Eigen::Vector3d nhat = cs.r.cross(cs.v).normalized();
    const Eigen::Vector3d that = nhat.cross(rhat);
    Eigen::Matrix<double, 6, 1> out;
    out.head<3>() = cs.v;
    out.tail<3>() = -mu * cs.r / std::pow(cs.r.norm(), 3) + d.radial * rhat +
                    d.transverse * that + d.normal * nhat;
    return out;
}

}  // namespace

TEST_CASE("perturbation components") {
    SpacecraftState s;
    s.mass = 1000.0;
    const ControlInput coast{0.0, {0.0, 1.0, 0.0}};
    const Perturbation p0 = perturbation(s, coast);
    REQUIRE(p0.radial == 0.0);
    REQUIRE(p0.transverse == 0.0);
    REQUIRE(p0.normal == 0.0);

    const Perturbation p1 = perturbation(s, ControlInput{100.0, {0.0, 1.0, 0.0}});
    REQUIRE(p1.transverse == Catch::Approx(0.1));
    const Perturbation p2 = perturbation(s, ControlInput{10000.0, {1.0, 0.0, 0.0}});
    REQUIRE(p2.radial == Catch::Approx(10.0));

    s.mass = 0.0;
    REQUIRE_THROWS_AS(perturbation(s, coast), std::domain_error);
}

TEST_CASE("rhs_time: scaled circular coast") {
    const MeeDynamicsConstants c{1.0, 1.0};
    SpacecraftState s{EquinoctialElements{1.0, 0, 0, 0, 0, 0.37}, 1.0};
    const StateVec7 dx = rhs_time(s, ControlInput{}, c);
    for (int i = 0; i < 5; ++i) REQUIRE(dx[i] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(dx[5] == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(dx[6] == 0.0);
}

TEST_CASE("rhs_time: mass flow at 100 N and Isp 1000 s") {
    // unscaled evaluation: exhaust velocity g0 * Isp
    const MeeDynamicsConstants c{3.986004418e14, 9.80665 * 1000.0};
    SpacecraftState s{coe_to_mee({7003.0e3, 0, 28.5 * kDeg, 0, 0, 0}), 1000.0};
    const StateVec7 dx = rhs_time(s, ControlInput{100.0, {0, 1, 0}}, c);
    REQUIRE(dx[6] == Catch::Approx(-1.019716e-2).epsilon(1e-6));
}

TEST_CASE("rhs_time: tangential thrust raises p") {
    const MeeDynamicsConstants c{1.0, 1.0};
    SpacecraftState s{EquinoctialElements{1.3, 0, 0, 0.1, -0.05, 1.2}, 0.8};
    const ControlInput ctrl{0.5, {0, 1, 0}};
    const StateVec7 dx = rhs_time(s, ctrl, c);
    const double w = 1.0;  // f = g = 0
    const double expected = std::sqrt(1.3) * (2.0 * 1.3 / w) * (0.5 / 0.8);
    REQUIRE(dx[0] == Catch::Approx(expected).epsilon(1e-14));
    REQUIRE(dx[0] > 0.0);
}

TEST_CASE("rhs_longitude: circular coast and definitional identity") {
    const MeeDynamicsConstants c{1.0, 1.0};
    SpacecraftState s{EquinoctialElements{1.0, 0, 0, 0, 0, 0.0}, 1.0};
    const StateVec7 dxdL = rhs_longitude(s, 0.0, ControlInput{}, c);
    REQUIRE(dxdL[0] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(dxdL[5] == Catch::Approx(1.0).epsilon(1e-14));  // dt/dL

    // chain-rule identity on random states and controls
    for (int trial = 0; trial < 100; ++trial) {
        const SpacecraftState st = random_state();
        const ControlInput ct = random_control();
        const StateVec7 dt_form = rhs_time(st, ct, c);
        if (dt_form[5] <= 0.0) continue;
        const StateVec7 dL_form = rhs_longitude(st, 0.33, ct, c);
        const double dtdL = 1.0 / dt_form[5];
        for (int i = 0; i < 5; ++i)
            REQUIRE(dL_form[i] == Catch::Approx(dt_form[i] * dtdL).margin(1e-14));
        REQUIRE(dL_form[5] == Catch::Approx(dtdL).epsilon(1e-14));
        REQUIRE(dL_form[6] == Catch::Approx(dt_form[6] * dtdL).margin(1e-14));
    }
}

TEST_CASE("rhs_longitude: LEO max tangential thrust signs") {
    const MeeDynamicsConstants c{1.0, 1.0 * 9.80665 * 1000.0 / 7905.4};  // scaled-ish ve
    SpacecraftState s{coe_to_mee({1.09797, 0, 28.5 * kDeg, 0, 0, 0}), 1.0};
    const StateVec7 dxdL = rhs_longitude(s, 0.0, ControlInput{1.0206, {0, 1, 0}}, c);
    REQUIRE(dxdL[0] > 0.0);  // dp/dL
    REQUIRE(dxdL[6] < 0.0);  // dm/dL
}

TEST_CASE("oracle equivalence: MEE rates map to Cartesian two-body + thrust") {
    const double mu = 1.0;
    const MeeDynamicsConstants c{mu, 1.0};
    int tested = 0;
    while (tested < 100) {
        const SpacecraftState s = random_state();
        const ControlInput ctrl = random_control();
        const StateVec7 dmee = rhs_time(s, ctrl, c);

        // exact Jacobian of the MEE -> Cartesian map
        using D = ad::Dual<6>;
        D in[6] = {D::variable(s.mee.p, 0), D::variable(s.mee.f, 1), D::variable(s.mee.g, 2),
                   D::variable(s.mee.h, 3), D::variable(s.mee.k, 4), D::variable(s.mee.L, 5)};
        D r[3], v[3];
        mee_to_cartesian_t(in, mu, r, v);

        Eigen::Matrix<double, 6, 1> dcart;
        for (int row = 0; row < 3; ++row) {
            double acc_r = 0.0, acc_v = 0.0;
            for (int col = 0; col < 6; ++col) {
                acc_r += r[row].d[col] * dmee[col];
                acc_v += v[row].d[col] * dmee[col];
            }
            dcart[row] = acc_r;
            dcart[3 + row] = acc_v;
        }

        const CartesianState cs = mee_to_cartesian(s.mee, mu);
        const auto oracle = cartesian_oracle(cs, perturbation(s, ctrl), mu);
        for (int i = 0; i < 6; ++i) {
            REQUIRE(dcart[i] == Catch::Approx(oracle[i]).margin(1e-9 * (1.0 + std::abs(oracle[i]))));
        }
        ++tested;
    }
}

TEST_CASE("coast conservation over one revolution") {
    const MeeDynamicsConstants c{1.0, 1.0};
    SpacecraftState s{EquinoctialElements{1.0, 0, 0, 0.2, -0.1, 0.0}, 0.9};
    auto coast = [](const SpacecraftState&, double) { return ControlInput{}; };
    IntegrateOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-12;
    const PropagateResult res = propagate_longitude(s, 0.0, coast, kTwoPi, c, opt);
    const Eigen::VectorXd& xf = res.traj.x.back();
    REQUIRE(xf[0] == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(xf[1] == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(xf[2] == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(xf[3] == Catch::Approx(0.2).margin(1e-9));
    REQUIRE(xf[4] == Catch::Approx(-0.1).margin(1e-9));
    REQUIRE(xf[6] == 0.9);  // mass untouched on coast
}

TEST_CASE("monotone mass") {
    const MeeDynamicsConstants c{1.0, 2.5};
    for (int trial = 0; trial < 100; ++trial) {
        const SpacecraftState s = random_state();
        const ControlInput ctrl = random_control();
        const StateVec7 dx = rhs_time(s, ctrl, c);
        REQUIRE(dx[6] <= 0.0);
        if (ctrl.thrust == 0.0) REQUIRE(dx[6] == 0.0);
        if (ctrl.thrust > 0.0) REQUIRE(dx[6] < 0.0);
    }
}
