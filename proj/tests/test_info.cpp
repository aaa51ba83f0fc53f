#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sckey/attacks.hpp"
#include "sckey/frames.hpp"
#include "sckey/info.hpp"
#include "sckey/rates.hpp"

using namespace sckey;

namespace {

const double kLog3 = std::log2(3.0);

JointDistribution trine_ir(double q) {
  return make_joint_builder(Protocol::Trine, Attack::InterceptResend)(q);
}

JointDistribution bb84_ir(double q) {
  return make_joint_builder(Protocol::Bb84, Attack::InterceptResend)(q);
}

}  // namespace

TEST_CASE("entropy basics") {
  RVector w(2);
  w << 0.5, 0.5;
  CHECK(std::abs(entropy(w) - 1.0) <= 1e-15);

  RVector det(2);
  det << 1.0, 0.0;
  CHECK(entropy(det) == 0.0);

  RVector u3 = RVector::Constant(3, 1.0 / 3.0);
  CHECK(std::abs(entropy(u3) - kLog3) <= 1e-12);

  RVector neg(2);
  neg << 1.5, -0.5;
  CHECK_THROWS_AS(entropy(neg), std::invalid_argument);
  RVector unnorm(2);
  unnorm << 0.5, 0.4;
  CHECK_THROWS_AS(entropy(unnorm), std::invalid_argument);
}

TEST_CASE("mutual information on simple joints") {
  SUBCASE("product distribution has zero MI") {
    Eigen::ArrayXd p(4);
    p << 0.2 * 0.7, 0.2 * 0.3, 0.8 * 0.7, 0.8 * 0.3;  // p(a)p(b), |E| = 1
    const JointDistribution j(2, 2, 1, p);
    CHECK(std::abs(mutual_information(j, Var::A, Var::B)) <= 1e-12);
  }
  SUBCASE("perfectly correlated uniform bits") {
    Eigen::ArrayXd p = Eigen::ArrayXd::Zero(4);
    p(0) = 0.5;  // (0,0)
    p(3) = 0.5;  // (1,1)
    const JointDistribution j(2, 2, 1, p);
    CHECK(std::abs(mutual_information(j, Var::A, Var::B) - 1.0) <= 1e-12);
  }
  SUBCASE("trine no-eavesdropping gives log2(3) - 1 bits") {
    // Bob's exclusion outcome rules out his index: p(b|a) = 1/2 off the diagonal
    const JointDistribution born = oracle::born_table(make_trine(), dual_frame(make_trine()));
    for (Index a = 0; a < 3; ++a)
      for (Index b = 0; b < 3; ++b)
        CHECK(std::abs(born(a, b, 0) - (a == b ? 0.0 : 1.0 / 6.0)) <= 1e-12);
    CHECK(std::abs(mutual_information(born, Var::A, Var::B) - (kLog3 - 1.0)) <= 1e-12);
  }
}

TEST_CASE("mutual information agrees with the direct-sum route") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 100; ++rep) {
    const JointDistribution j = oracle::random_joint(rng, 3, 4, 2);
    CHECK(std::abs(mutual_information(j, Var::A, Var::B) - oracle::mi_direct(j.marginal_ab())) <= 1e-11);
    CHECK(std::abs(mutual_information(j, Var::A, Var::E) - oracle::mi_direct(j.marginal_ae())) <= 1e-11);
    CHECK(std::abs(mutual_information(j, Var::B, Var::E) - oracle::mi_direct(j.marginal_be())) <= 1e-11);
  }
}

TEST_CASE("conditional mutual information") {
  SUBCASE("independent Eve reduces to I(A:B)") {
    std::mt19937_64 rng(31);
    const JointDistribution base = oracle::random_joint(rng, 3, 3, 1);
    // extend with an independent uniform 2-symbol E
    Eigen::ArrayXd p(3 * 3 * 2);
    for (Index a = 0; a < 3; ++a)
      for (Index b = 0; b < 3; ++b)
        for (Index e = 0; e < 2; ++e) p((a * 3 + b) * 2 + e) = 0.5 * base(a, b, 0);
    const JointDistribution j(3, 3, 2, p);
    CHECK(std::abs(conditional_mutual_information(j) - mutual_information(j, Var::A, Var::B)) <= 1e-12);
  }
  SUBCASE("Eve copying Alice forces I(A:B|E) = 0") {
    Eigen::ArrayXd p = Eigen::ArrayXd::Zero(2 * 2 * 2);
    // p(a, b, e) = 1/4 when e = a, b uniform and independent of a
    for (Index a = 0; a < 2; ++a)
      for (Index b = 0; b < 2; ++b) p((a * 2 + b) * 2 + a) = 0.25;
    const JointDistribution j(2, 2, 2, p);
    CHECK(conditional_mutual_information(j) <= 1e-12);
  }
  SUBCASE("intercept-resend at q=1 is conditionally independent given Eve") {
    // Eve resends the state her outcome names, so A -> E -> B is a Markov
    // chain and I(A:B|E) vanishes at full interception.
    CHECK(std::abs(conditional_mutual_information(trine_ir(1.0))) <= 1e-12);
    CHECK(std::abs(conditional_mutual_information(bb84_ir(1.0))) <= 1e-12);
  }
  SUBCASE("partial interception mixes in the no-attack slice") {
    const double i0 = kLog3 - 1.0;
    for (double q : {0.25, 0.5, 0.75})
      CHECK(std::abs(conditional_mutual_information(trine_ir(q)) - (1.0 - q) * i0) <= 1e-10);
  }
}

TEST_CASE("key rate bounds at the protocol operating points") {
  SUBCASE("trine, no eavesdropping") {
    const RateBounds rb = key_rate_bounds(trine_ir(0.0));
    CHECK(std::abs(rb.lower - (kLog3 - 1.0)) <= 1e-9);
    CHECK(std::abs(rb.upper - (kLog3 - 1.0)) <= 1e-9);
    CHECK(std::abs(rb.i_ae) <= 1e-12);
  }
  SUBCASE("bb84, no eavesdropping") {
    const JointDistribution born = oracle::born_table(make_bb84(), make_bb84());
    // p(b|a) pattern (1/2, 0, 1/4, 1/4): H(B) - H(B|A) = 2 - 1.5
    const RateBounds rb = key_rate_bounds(bb84_ir(0.0));
    CHECK(std::abs(rb.lower - 0.5) <= 1e-9);
    CHECK(std::abs(rb.upper - 0.5) <= 1e-9);
    CHECK(std::abs(mutual_information(born, Var::A, Var::B) - 0.5) <= 1e-12);
  }
  SUBCASE("Eve copying Alice kills the lower bound") {
    Eigen::ArrayXd p = Eigen::ArrayXd::Zero(2 * 2 * 2);
    for (Index a = 0; a < 2; ++a)
      for (Index b = 0; b < 2; ++b) p((a * 2 + b) * 2 + a) = a == b ? 0.4 : 0.1;
    const RateBounds rb = key_rate_bounds(JointDistribution(2, 2, 2, p));
    CHECK(std::abs(rb.lower) <= 1e-12);
  }
}

TEST_CASE("observed error rates") {
  CHECK(observed_error_rate(trine_ir(0.0), Protocol::Trine) <= 1e-15);
  CHECK(std::abs(observed_error_rate(trine_ir(1.0), Protocol::Trine) - 1.0 / 6.0) <= 1e-12);
  CHECK(std::abs(observed_error_rate(bb84_ir(1.0), Protocol::Bb84) - 1.0 / 8.0) <= 1e-12);

  SUBCASE("linearity in q") {
    for (int i = 0; i <= 10; ++i) {
      const double q = 0.1 * i;
      CHECK(std::abs(observed_error_rate(trine_ir(q), Protocol::Trine) - q / 6.0) <= 1e-10);
      CHECK(std::abs(observed_error_rate(bb84_ir(q), Protocol::Bb84) - q / 8.0) <= 1e-10);
    }
  }
}

TEST_CASE("Eve's information is symmetric between Alice and Bob for the trine") {
  for (double q : {0.3, 1.0}) {
    const JointDistribution j = trine_ir(q);
    CHECK(std::abs(mutual_information(j, Var::A, Var::E) -
                   mutual_information(j, Var::B, Var::E)) < 1e-9);
  }
}

TEST_CASE("random joints: MI symmetry, nonnegativity, bound ordering") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<Index> size(1, 5);
  for (int rep = 0; rep < 1000; ++rep) {
    const JointDistribution j = oracle::random_joint(rng, size(rng), size(rng), size(rng));
    const double iab = mutual_information(j, Var::A, Var::B);
    const double iae = mutual_information(j, Var::A, Var::E);
    const double ibe = mutual_information(j, Var::B, Var::E);
    CHECK(iab >= -1e-12);
    CHECK(iae >= -1e-12);
    CHECK(ibe >= -1e-12);
    CHECK(std::abs(iab - mutual_information(j, Var::B, Var::A)) <= 1e-12);
    CHECK(std::abs(iae - mutual_information(j, Var::E, Var::A)) <= 1e-12);
    CHECK(std::abs(ibe - mutual_information(j, Var::E, Var::B)) <= 1e-12);
    const RateBounds rb = key_rate_bounds(j);
    CHECK(rb.lower <= rb.upper + 1e-9);
  }
}

TEST_CASE("joint distribution validation") {
  Eigen::ArrayXd bad = Eigen::ArrayXd::Constant(4, 0.3);
  CHECK_THROWS_AS(JointDistribution(2, 2, 1, bad), std::invalid_argument);
  Eigen::ArrayXd neg(2);
  neg << 1.5, -0.5;
  CHECK_THROWS_AS(JointDistribution(2, 1, 1, neg), std::invalid_argument);
}
