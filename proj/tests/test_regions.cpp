#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "equivoc/regions.hpp"
#include "oracle.hpp"

using namespace equivoc;
using oracle::A;
using oracle::C;
using oracle::E;
using oracle::U;
using oracle::V;
using oracle::W;

namespace {

constexpr double kTol = 1e-10;

AuxiliarySystem degenerate_system(const JointSource& s, std::size_t symbol = 0) {
  return {Channel::constant(1), Channel::constant(s.na()), Channel::constant(s.nc()),
          Reconstruction::constant(1, 1, symbol)};
}

Channel long_chain_w(const Channel& uv, const Channel& va, const Channel& wc) {
  const std::size_t nu = uv.output_size(), nv = va.output_size(), nc = wc.input_size(), nw = wc.output_size();
  std::vector<double> rows;
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t w = 0; w < nw; ++w) rows.push_back(wc(c, w));
  return Channel(nu * nv * nc, nw, rows);
}

void check_terms(const InnerBounds& b, const oracle::SixTerms& o) {
  CHECK(b.R_A_min == doctest::Approx(o.R_A_min).epsilon(kTol).scale(1.0));
  CHECK(b.R_C_min == doctest::Approx(o.R_C_min).epsilon(kTol).scale(1.0));
  CHECK(b.sum_min == doctest::Approx(o.sum_min).epsilon(kTol).scale(1.0));
  CHECK(b.D_min == doctest::Approx(o.D_min).epsilon(kTol).scale(1.0));
  CHECK(b.Delta_max == doctest::Approx(o.Delta_max).epsilon(kTol).scale(1.0));
  CHECK(b.Delta_minus_Rc_max == doctest::Approx(o.Delta_minus_Rc_max).epsilon(kTol).scale(1.0));
}

double near(double a, double b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("inner bound with degenerate auxiliaries is the no-coding point") {
  std::mt19937_64 g(11);
  const auto s = oracle::random_source(g, 2, 2, 2);
  const auto d = DistortionMeasure::hamming(2);
  const auto b = inner_bound_point(s, d, degenerate_system(s, 1));
  CHECK(b.R_A_min == doctest::Approx(0.0));
  CHECK(b.R_C_min == doctest::Approx(0.0));
  CHECK(b.sum_min == doctest::Approx(0.0));
  CHECK(b.Delta_max == doctest::Approx(s.pmf().conditional_entropy(JointSource::A, JointSource::E)));
  CHECK(b.D_min == doctest::Approx(s.marginal_a()[0]));
}

TEST_CASE("inner bound with the full-disclosure system") {
  std::mt19937_64 g(12);
  const auto s = oracle::random_source(g, 2, 2, 2);
  const auto d = DistortionMeasure::hamming(2);
  const AuxiliarySystem sys{Channel::identity(2), Channel::identity(2), Channel::identity(2),
                            Reconstruction(2, 2, {0, 0, 1, 1})};
  const auto b = inner_bound_point(s, d, sys);
  const auto& p = s.pmf();
  CHECK(b.R_A_min == doctest::Approx(p.conditional_entropy(JointSource::A, JointSource::C)));
  CHECK(b.sum_min == doctest::Approx(p.entropy(JointSource::A | JointSource::C)));
  CHECK(b.Delta_max == doctest::Approx(0.0).scale(1.0));
  CHECK(b.D_min == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("inner bound terms match the direct-summation oracle") {
  std::mt19937_64 g(13);
  for (int k = 0; k < 40; ++k) {
    const auto s = oracle::random_source(g, 2, 2, 2);
    const auto d = DistortionMeasure(2, {0.0, 1.0, 1.5, 0.0});
    const auto sys = oracle::random_system(g, s, 2, 2, 2);
    const auto t = oracle::full_joint(s, sys.u_given_v, sys.v_given_a, sys.w_given_c);
    check_terms(inner_bound_point(s, d, sys), oracle::six_terms(t, d, sys.reconstruction));
  }
  // Larger alphabets.
  for (int k = 0; k < 10; ++k) {
    const auto s = oracle::random_source(g, 3, 2, 3);
    const auto d = DistortionMeasure::hamming(3);
    const auto sys = oracle::random_system(g, s, 2, 3, 3);
    const auto t = oracle::full_joint(s, sys.u_given_v, sys.v_given_a, sys.w_given_c);
    check_terms(inner_bound_point(s, d, sys), oracle::six_terms(t, d, sys.reconstruction));
  }
}

TEST_CASE("admits tests all six inequalities") {
  InnerBounds b;
  b.R_A_min = 0.3;
  b.R_C_min = 0.2;
  b.sum_min = 0.6;
  b.D_min = 0.1;
  b.Delta_max = 0.5;
  b.Delta_minus_Rc_max = 0.25;
  CHECK(b.admits({0.4, 0.2, 0.1, 0.45}));
  CHECK_FALSE(b.admits({0.29, 0.4, 0.1, 0.1}));  // R_A
  CHECK_FALSE(b.admits({0.5, 0.19, 0.1, 0.1}));  // R_C
  CHECK_FALSE(b.admits({0.3, 0.25, 0.1, 0.1}));  // sum
  CHECK_FALSE(b.admits({0.4, 0.3, 0.09, 0.1}));  // D
  CHECK_FALSE(b.admits({0.4, 0.3, 0.1, 0.51}));  // Delta
  CHECK_FALSE(b.admits({0.4, 0.2, 0.1, 0.46}));  // Delta - R_C
}

TEST_CASE("inner bound rejects dimension mismatches") {
  std::mt19937_64 g(14);
  const auto s = oracle::random_source(g, 2, 2, 2);
  const auto d = DistortionMeasure::hamming(2);
  auto sys = oracle::random_system(g, s, 2, 2, 2);
  sys.reconstruction = Reconstruction::constant(3, 2, 0);
  CHECK_THROWS_AS(inner_bound_point(s, d, sys), ValidationError);
  sys = oracle::random_system(g, s, 2, 2, 2);
  CHECK_THROWS_AS(inner_bound_point(s, DistortionMeasure::hamming(3), sys), ValidationError);
  sys.v_given_a = Channel::identity(3);
  CHECK_THROWS_AS(inner_bound_point(s, d, sys), ValidationError);
}

TEST_CASE("corner points match oracle coordinates") {
  std::mt19937_64 g(15);
  for (int k = 0; k < 20; ++k) {
    const auto s = oracle::random_source(g, 2, 2, 2);
    const auto d = DistortionMeasure::hamming(2);
    const auto sys = oracle::random_system(g, s, 2, 2, 2);
    const auto t = oracle::full_joint(s, sys.u_given_v, sys.v_given_a, sys.w_given_c);
    const double h_ue = oracle::cond_entropy(t, {A}, {U, E});
    const double dist = oracle::six_terms(t, d, sys.reconstruction).D_min;
    const auto p1 = corner_point(s, d, sys, CornerPoint::I);
    const auto p2 = corner_point(s, d, sys, CornerPoint::II);
    const auto p3 = corner_point(s, d, sys, CornerPoint::III);
    CHECK(near(p1.R_A, oracle::cond_mi(t, {V}, {A}, {W})) < kTol);
    CHECK(near(p1.R_C, oracle::cond_mi(t, {W}, {C})) < kTol);
    CHECK(near(p1.Delta, h_ue - oracle::cond_mi(t, {V}, {A}, {U, W})) < kTol);
    CHECK(near(p2.R_A, oracle::cond_mi(t, {U}, {A}) + oracle::cond_mi(t, {V}, {A}, {U, W})) < kTol);
    CHECK(near(p2.R_C, oracle::cond_mi(t, {W}, {C}, {U})) < kTol);
    CHECK(near(p2.Delta, p1.Delta) < kTol);
    CHECK(near(p3.R_A, oracle::cond_mi(t, {V}, {A})) < kTol);
    CHECK(near(p3.R_C, oracle::cond_mi(t, {W}, {C}, {V})) < kTol);
    CHECK(near(p3.Delta, h_ue - oracle::cond_mi(t, {V}, {A}, {U})) < kTol);
    for (const auto& p : {p1, p2, p3}) CHECK(near(p.D, dist) < kTol);
  }
}

TEST_CASE("corner points of a degenerate system coincide") {
  std::mt19937_64 g(16);
  const auto s = oracle::random_source(g, 2, 2, 2);
  const auto d = DistortionMeasure::hamming(2);
  const auto sys = degenerate_system(s);
  const double h_ae = s.pmf().conditional_entropy(JointSource::A, JointSource::E);
  for (auto which : {CornerPoint::I, CornerPoint::II, CornerPoint::III}) {
    const auto p = corner_point(s, d, sys, which);
    CHECK(p.R_A == doctest::Approx(0.0).scale(1.0));
    CHECK(p.R_C == doctest::Approx(0.0).scale(1.0));
    CHECK(p.Delta == doctest::Approx(h_ae));
    CHECK(p.D == doctest::Approx(s.marginal_a()[1]));
  }
}

TEST_CASE("corner-point coincidence identities") {
  std::mt19937_64 g(17);
  for (int k = 0; k < 50; ++k) {
    const auto s = oracle::random_source(g, 2 + k % 2, 2, 2);
    const auto d = DistortionMeasure::hamming(s.na());
    const auto sys = oracle::random_system(g, s, 1 + k % 3, 2 + k % 2, 2);
    const auto p1 = corner_point(s, d, sys, CornerPoint::I);
    const auto p2 = corner_point(s, d, sys, CornerPoint::II);
    const auto p3 = corner_point(s, d, sys, CornerPoint::III);
    CHECK(near(p1.R_A + p1.R_C, p2.R_A + p2.R_C) < kTol);
    CHECK(near(p2.R_A + p2.R_C, p3.R_A + p3.R_C) < kTol);
    CHECK(near(p1.Delta, p2.Delta) < kTol);
    CHECK(near(p2.Delta - p2.R_C, p3.Delta - p3.R_C) < kTol);
    // Each corner satisfies the six inequalities at its own system.
    const auto b = inner_bound_point(s, d, sys);
    for (const auto& p : {p1, p2, p3}) CHECK(b.admits(p, 1e-9));
  }
}

TEST_CASE("outer bound coincides with the inner bound on long-chain systems") {
  std::mt19937_64 g(18);
  for (int k = 0; k < 20; ++k) {
    const auto s = oracle::random_source(g, 2, 2, 2);
    const auto d = DistortionMeasure::hamming(2);
    const auto sys = oracle::random_system(g, s, 2, 2, 2);
    const auto w = long_chain_w(sys.u_given_v, sys.v_given_a, sys.w_given_c);
    const auto in = inner_bound_point(s, d, sys);
    const auto out = outer_bound_point(s, d, sys.u_given_v, sys.v_given_a, w, sys.reconstruction);
    CHECK(near(in.R_A_min, out.R_A_min) < kTol);
    CHECK(near(in.R_C_min, out.R_C_min) < kTol);
    CHECK(near(in.sum_min, out.sum_min) < kTol);
    CHECK(near(in.D_min, out.D_min) < kTol);
    CHECK(near(in.Delta_max, out.Delta_max) < kTol);
    CHECK(near(in.Delta_minus_Rc_max, out.Delta_minus_Rc_max) < kTol);
  }
}

TEST_CASE("outer bound on degenerate auxiliaries") {
  std::mt19937_64 g(19);
  const auto s = oracle::random_source(g, 2, 2, 2);
  const auto d = DistortionMeasure::hamming(2);
  const auto out = outer_bound_point(s, d, Channel::constant(1), Channel::constant(2), Channel::constant(2),
                                     Reconstruction::constant(1, 1, 0));
  CHECK(out.R_A_min == doctest::Approx(0.0).scale(1.0));
  CHECK(out.Delta_max == doctest::Approx(s.pmf().conditional_entropy(JointSource::A, JointSource::E)));
}

TEST_CASE("outer bound terms match the oracle for W depending on (U, V, C)") {
  std::mt19937_64 g(20);
  for (int k = 0; k < 20; ++k) {
    const auto s = oracle::random_source(g, 2, 2, 2);
    const auto d = DistortionMeasure::hamming(2);
    const auto uv = oracle::random_channel(g, 2, 2);
    const auto va = oracle::random_channel(g, 2, 2);
    const auto w = oracle::random_channel(g, 8, 2);
    const auto rec = oracle::random_reconstruction(g, 2, 2, 2);
    const auto t = oracle::outer_joint(s, uv, va, w);
    const auto o = oracle::six_terms(t, d, rec);
    // A random W generally breaks W - C - (A, E); the evaluator must then refuse.
    const double res = oracle::cond_mi(t, {W}, {A, E}, {C});
    if (res < 1e-12) {
      check_terms(outer_bound_point(s, d, uv, va, w, rec), o);
    } else {
      CHECK_THROWS_AS(outer_bound_point(s, d, uv, va, w, rec), ValidationError);
    }
  }
}

TEST_CASE("outer bound accepts W that depends on U through C only") {
  // A independent of (C, E): then W may depend on (U, V) freely without
  // breaking W - C - (A, E).
  std::mt19937_64 g(21);
  const std::vector<double> pa{0.3, 0.7};
  const std::vector<double> pce{0.1, 0.2, 0.3, 0.4};
  std::vector<double> probs;
  for (double x : pa)
    for (double y : pce) probs.push_back(x * y);
  const JointSource s(2, 2, 2, probs);
  const auto d = DistortionMeasure::hamming(2);
  const auto uv = oracle::random_channel(g, 2, 2);
  const auto va = oracle::random_channel(g, 2, 2);
  const auto w = oracle::random_channel(g, 8, 2);
  const auto rec = Reconstruction(2, 2, {0, 1, 1, 0});
  const auto t = oracle::outer_joint(s, uv, va, w);
  const double res = oracle::cond_mi(t, {W}, {A, E}, {C});
  // With V independent of A the chain holds for any p(w|u,v,c).
  if (res > 1e-12) CHECK_THROWS_AS(outer_bound_point(s, d, uv, va, w, rec), ValidationError);
  const Channel va_indep(2, 2, {0.4, 0.6, 0.4, 0.6});
  const auto t2 = oracle::outer_joint(s, uv, va_indep, w);
  check_terms(outer_bound_point(s, d, uv, va_indep, w, rec), oracle::six_terms(t2, d, rec));
}

TEST_CASE("uncoded region: silent Alice") {
  std::mt19937_64 g(22);
  const auto s = oracle::random_source(g, 2, 2, 2);
  const auto d = DistortionMeasure::hamming(2);
  const auto r = uncoded_region_point(s, d, Channel::constant(1), Channel::constant(2),
                                      Reconstruction(1, 2, {0, 1}));
  CHECK(r.R_A_min == doctest::Approx(0.0).scale(1.0));
  CHECK(r.Delta_max == doctest::Approx(s.pmf().conditional_entropy(JointSource::A, JointSource::E)));
  const auto alt = uncoded_region_point_alt(s, d, Channel::constant(1), Channel::constant(2),
                                            Reconstruction(1, 2, {0, 1}));
  CHECK(alt.R_A_min == doctest::Approx(r.R_A_min).scale(1.0));
  CHECK(alt.Delta_max == doctest::Approx(r.Delta_max));
}

TEST_CASE("uncoded region: U = V gives H(A|VE); U trivial gives H(A|VC) + I(A;C) - I(A;E)") {
  std::mt19937_64 g(23);
  for (int k = 0; k < 20; ++k) {
    const auto s = oracle::random_source(g, 2, 2, 2);
    const auto d = DistortionMeasure::hamming(2);
    const auto va = oracle::random_channel(g, 2, 3);
    const auto rec = oracle::random_reconstruction(g, 3, 2, 2);
    const auto t = oracle::full_joint(s, Channel::identity(3), va, Channel::identity(2));
    const auto same = uncoded_region_point(s, d, Channel::identity(3), va, rec);
    CHECK(near(same.Delta_max, oracle::cond_entropy(t, {A}, {V, E})) < kTol);
    const auto none = uncoded_region_point(s, d, Channel::constant(3), va, rec);
    const double expected =
        oracle::cond_entropy(t, {A}, {V, C}) + oracle::cond_mi(t, {A}, {C}) - oracle::cond_mi(t, {A}, {E});
    CHECK(near(none.Delta_max, expected) < kTol);
    CHECK(near(none.R_A_min, oracle::cond_mi(t, {V}, {A}, {C})) < kTol);
  }
}

TEST_CASE("uncoded region matches the oracle and equals the inner bound with W = C") {
  std::mt19937_64 g(24);
  for (int k = 0; k < 20; ++k) {
    const auto s = oracle::random_source(g, 2, 3, 2);
    const auto d = DistortionMeasure::hamming(2);
    const auto uv = oracle::random_channel(g, 2, 2);
    const auto va = oracle::random_channel(g, 2, 2);
    const auto rec = oracle::random_reconstruction(g, 2, 3, 2);
    const auto t = oracle::full_joint(s, uv, va, Channel::identity(3));
    const auto r = uncoded_region_point(s, d, uv, va, rec);
    CHECK(near(r.R_A_min, oracle::cond_mi(t, {V}, {A}, {C})) < kTol);
    const double delta = oracle::cond_entropy(t, {A}, {V, C}) + oracle::cond_mi(t, {A}, {C}, {U}) -
                         oracle::cond_mi(t, {A}, {E}, {U});
    CHECK(near(r.Delta_max, delta) < kTol);
    const auto in = inner_bound_point(s, d, {uv, va, Channel::identity(3), rec});
    CHECK(near(r.R_A_min, in.R_A_min) < kTol);
    CHECK(near(r.D_min, in.D_min) < kTol);
    CHECK(near(r.Delta_max, in.Delta_max) < kTol);
  }
}

TEST_CASE("uncoded alternative rate adds [I(U;C) - I(U;E)]_+") {
  // C is a clean copy of A, E is very noisy: U = V = A gives I(U;C) > I(U;E).
  const std::vector<double> pa{0.5, 0.5};
  const auto s = JointSource::from_channels(pa, Channel::bsc(0.05), Channel::bsc(0.4));
  const auto d = DistortionMeasure::hamming(2);
  const auto va = Channel::bsc(0.1);
  const auto uv = Channel::bsc(0.2);
  const auto rec = Reconstruction(2, 2, {0, 0, 1, 1});
  const auto t = oracle::full_joint(s, uv, va, Channel::identity(2));
  const double gap = oracle::cond_mi(t, {U}, {C}) - oracle::cond_mi(t, {U}, {E});
  REQUIRE(gap > 0.01);
  const auto r = uncoded_region_point(s, d, uv, va, rec);
  const auto alt = uncoded_region_point_alt(s, d, uv, va, rec);
  CHECK(near(alt.R_A_min - r.R_A_min, gap) < kTol);
  CHECK(near(alt.Delta_max, r.Delta_max) < kTol);

  // Reversed roles: the bracket clamps to zero.
  const auto s2 = JointSource::from_channels(pa, Channel::bsc(0.4), Channel::bsc(0.05));
  const auto r2 = uncoded_region_point(s2, d, uv, va, rec);
  const auto alt2 = uncoded_region_point_alt(s2, d, uv, va, rec);
  CHECK(near(alt2.R_A_min, r2.R_A_min) < kTol);
}

TEST_CASE("lossless region endpoints") {
  std::mt19937_64 g(25);
  for (int k = 0; k < 10; ++k) {
    const auto s = oracle::random_source(g, 2, 2, 2);
    const auto& p = s.pmf();
    const auto full = lossless_region_point(s, Channel::identity(2));
    CHECK(full.Delta_max == doctest::Approx(0.0).scale(1.0));
    CHECK(full.R_C_min == doctest::Approx(p.conditional_entropy(JointSource::C, JointSource::A)));
    const auto none = lossless_region_point(s, Channel::constant(2));
    CHECK(none.Delta_max == doctest::Approx(p.mutual_information(JointSource::A, JointSource::C) -
                                            p.mutual_information(JointSource::A, JointSource::E))
                                .scale(1.0));
    CHECK(none.R_C_min == doctest::Approx(p.entropy(JointSource::C)));
    CHECK(none.R_A_min == doctest::Approx(p.conditional_entropy(JointSource::A, JointSource::C)));
    CHECK(none.sum_min == doctest::Approx(p.entropy(JointSource::A | JointSource::C)));
  }
}

TEST_CASE("lossless region matches the oracle") {
  std::mt19937_64 g(26);
  for (int k = 0; k < 20; ++k) {
    const auto s = oracle::random_source(g, 2, 2, 2);
    const auto ua = oracle::random_channel(g, 2, 2);
    const auto t = oracle::full_joint(s, ua, Channel::identity(2), Channel::constant(2));
    const auto r = lossless_region_point(s, ua);
    CHECK(near(r.R_A_min, oracle::cond_entropy(t, {A}, {C})) < kTol);
    CHECK(near(r.R_C_min, oracle::cond_entropy(t, {C}, {U})) < kTol);
    CHECK(near(r.sum_min, oracle::cond_entropy(t, {A, C})) < kTol);
    CHECK(near(r.Delta_max, oracle::cond_mi(t, {A}, {C}, {U}) - oracle::cond_mi(t, {A}, {E}, {U})) < kTol);
    const auto alt = lossless_region_point_alt(s, ua);
    const double gap = std::max(0.0, oracle::cond_mi(t, {U}, {C}) - oracle::cond_mi(t, {U}, {E}));
    CHECK(near(alt.R_A_min, r.R_A_min + gap) < kTol);
    CHECK(near(alt.Delta_max, r.Delta_max) < kTol);
  }
  CHECK_THROWS_AS(lossless_region_point(oracle::random_source(g, 2, 2, 2), Channel::identity(3)), ValidationError);
}

TEST_CASE("lossless alternative rate with more capable C") {
  const std::vector<double> pa{0.5, 0.5};
  const auto s = JointSource::from_channels(pa, Channel::bsc(0.05), Channel::bsc(0.3));
  const auto ua = Channel::bsc(0.1);
  const auto t = oracle::full_joint(s, ua, Channel::identity(2), Channel::constant(2));
  const double gap = oracle::cond_mi(t, {U}, {C}) - oracle::cond_mi(t, {U}, {E});
  REQUIRE(gap > 0.01);
  CHECK(near(lossless_region_point_alt(s, ua).R_A_min - lossless_region_point(s, ua).R_A_min, gap) < kTol);
  const auto silent = lossless_region_point_alt(s, Channel::constant(2));
  CHECK(near(silent.R_A_min, lossless_region_point(s, Channel::constant(2)).R_A_min) < kTol);
}

// ---- Gaussian ---------------------------------------------------------------

TEST_CASE("Gaussian inner bound closed form") {
  const double half_log_2pie = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e);
  const auto b0 = gaussian_inner({0.8, 0.6}, 0.0, 1.0);
  CHECK(b0.R_A_min == 0.0);
  CHECK(b0.Delta_max == doctest::Approx(0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * 0.64)));
  const auto b1 = gaussian_inner({0.8, 0.6}, 30.0, 0.1);
  CHECK(b1.R_A_min == doctest::Approx(0.5 * std::log2(3.6)).epsilon(1e-12));
  CHECK(b1.R_A_min == doctest::Approx(0.9239984).epsilon(1e-6));
  const auto binf = gaussian_inner({0.8, 0.6}, kUnbounded, 0.1);
  CHECK(binf.R_A_min == doctest::Approx(0.5 * std::log2(3.6)).epsilon(1e-14));
  const auto p6 = gaussian_optimal_no_eve_si(0.8, 1.0, 0.2);
  CHECK(p6.R_A_min == doctest::Approx(0.5 * std::log2(2.6)).epsilon(1e-14));
  CHECK(p6.R_A_min == doctest::Approx(0.6892561).epsilon(1e-6));
  CHECK(p6.R_A_min + p6.Delta_max == doctest::Approx(half_log_2pie));
  const auto clamp = gaussian_optimal_no_eve_si(0.8, 1.0, 0.6);
  CHECK(clamp.R_A_min == 0.0);
  CHECK(clamp.Delta_max == doctest::Approx(half_log_2pie));
  CHECK_THROWS_AS(gaussian_inner({0.8, 0.6}, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(gaussian_inner({0.8, 0.6}, -1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(GaussianParams(1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(GaussianParams(0.5, 1.0), ValidationError);
  CHECK(gaussian_residual_variance(0.8, 1.0) == doctest::Approx(0.36 + 0.64 * 0.25));
}

TEST_CASE("Gaussian inner bound with rho_E = 0 equals the no-Eve-side-information form") {
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const double rc = 4.0 * i / 49.0;
      const double d = 0.01 + 1.2 * j / 49.0;
      const auto a = gaussian_inner({0.8, 0.0}, rc, d);
      const auto b = gaussian_optimal_no_eve_si(0.8, rc, d);
      CHECK(near(a.R_A_min, b.R_A_min) <= 1e-9);
      CHECK(near(a.Delta_max, b.Delta_max) <= 1e-9);
    }
}

TEST_CASE("Gaussian surface is monotone at rho_C 0.8, rho_E 0.6") {
  const GaussianParams gp(0.8, 0.6);
  for (int i = 0; i + 1 < 40; ++i) {
    const double rc = 0.1 * i;
    const auto a = gaussian_inner(gp, rc, 0.1);
    const auto b = gaussian_inner(gp, rc + 0.1, 0.1);
    CHECK(b.R_A_min <= a.R_A_min + 1e-12);
    for (int j = 0; j + 1 < 30; ++j) {
      const double d = 0.02 + 0.03 * j;
      const auto x = gaussian_inner(gp, rc, d);
      const auto y = gaussian_inner(gp, rc, d + 0.03);
      CHECK(y.Delta_max >= x.Delta_max - 1e-12);
      CHECK(y.R_A_min <= x.R_A_min + 1e-12);
    }
  }
}

// ---- Binary -----------------------------------------------------------------

TEST_CASE("binary closed form examples") {
  const double eps = h2(0.1);
  const auto lossless = binary_bec_bsc_point({0.1, eps, 0.0, 0.078});
  CHECK(lossless.R_A_min == doctest::Approx(0.469).epsilon(1e-3));
  CHECK(lossless.D_min == 0.0);
  CHECK(lossless.Delta_max == doctest::Approx(0.039).epsilon(0.002 / 0.039));
  const auto sw = binary_bec_bsc_point({0.1, eps, 0.0, 0.0});
  CHECK(sw.Delta_max == doctest::Approx(0.0).scale(1.0));
  const auto mid = binary_bec_bsc_point({0.1, eps, 0.031, 0.05});
  CHECK(std::abs(mid.R_A_min - 0.375) < 0.002);
  CHECK(std::abs(mid.D_min - 0.015) < 0.002);
  CHECK(std::abs(mid.Delta_max - 0.133) < 0.002);
  const auto wz = binary_wyner_ziv_point(0.1, eps, 0.031);
  CHECK(std::abs(wz.Delta_max - 0.126) < 0.002);
  CHECK(binary_wyner_ziv_point(0.1, eps, 0.0).Delta_max == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(BinaryParams(0.6, 0.5, 0.1, 0.1), ValidationError);
  CHECK_THROWS_AS(BinaryParams(0.1, 0.5, 0.6, 0.1), ValidationError);
  CHECK_THROWS_AS(BinaryParams(0.1, 0.5, 0.1, -0.1), ValidationError);
}

TEST_CASE("binary closed form against the direct formula and the Wyner-Ziv specialization") {
  for (double p : {0.0, 0.05, 0.1, 0.3, 0.5})
    for (double eps : {0.0, 0.2, 0.469, 0.8, 1.0})
      for (double a = 0.0; a <= 0.5; a += 0.125)
        for (double b = 0.0; b <= 0.5; b += 0.125) {
          const auto r = binary_bec_bsc_point({p, eps, a, b});
          const double ab = a * (1 - b) + (1 - a) * b;
          const double pab = p * (1 - ab) + (1 - p) * ab;
          const double expected = eps * oracle::h2(a) + (1 - eps) * oracle::h2(ab) - oracle::h2(pab) + oracle::h2(p);
          CHECK(near(r.Delta_max, expected) < 1e-12);
          CHECK(near(r.R_A_min, eps * (1 - oracle::h2(a))) < 1e-12);
          CHECK(near(r.D_min, eps * a) < 1e-12);
          const auto wz = binary_wyner_ziv_point(p, eps, a);
          const auto b0 = binary_bec_bsc_point({p, eps, a, 0.0});
          CHECK(wz.Delta_max == b0.Delta_max);
          CHECK(wz.R_A_min == b0.R_A_min);
          CHECK(wz.D_min == b0.D_min);
        }
}

TEST_CASE("binary closed form equals the generic evaluator on the binary auxiliaries") {
  for (double p : {0.05, 0.1, 0.25})
    for (double eps : {0.15, h2(0.1), 0.7})
      for (double a : {0.0, 0.031, 0.2, 0.5})
        for (double b : {0.0, 0.05, 0.3}) {
          const auto s = binary_bec_bsc_source(p, eps);
          const auto aux = binary_auxiliaries(a, b);
          const auto d = DistortionMeasure::hamming(2);
          const auto closed = binary_bec_bsc_point({p, eps, a, b});
          const auto un = uncoded_region_point(s, d, aux.u_given_v, aux.v_given_a, aux.reconstruction);
          CHECK(near(closed.R_A_min, un.R_A_min) < 1e-10);
          CHECK(near(closed.D_min, un.D_min) < 1e-10);
          CHECK(near(closed.Delta_max, un.Delta_max) < 1e-10);
          const auto t = oracle::full_joint(s, aux.u_given_v, aux.v_given_a, Channel::identity(3));
          const auto o = oracle::six_terms(t, d, aux.reconstruction);
          CHECK(near(closed.Delta_max, o.Delta_max) < 1e-10);
          CHECK(near(closed.R_A_min, o.R_A_min) < 1e-10);
        }
}
