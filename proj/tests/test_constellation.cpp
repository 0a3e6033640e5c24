// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <set>

#include "qsc/constellation.hpp"
#include "qsc/counter_rng.hpp"
#include "qsc/errors.hpp"
#include "qsc/quantum.hpp"

using namespace qsc;

TEST_CASE("build_y00: degenerate M=1 and the M=2 QPSK layout") {
  auto c1 = Y00Constellation::build(1, 1.0);
  REQUIRE(c1.points().size() == 2);
  CHECK(c1.points()[0].theta == 0.0);
  CHECK(c1.points()[1].theta == doctest::Approx(kPi).epsilon(1e-15));

  auto c2 = Y00Constellation::build(2, 1.0);
  REQUIRE(c2.points().size() == 4);
  CHECK(c2.points()[0].theta == 0.0);
  CHECK(c2.points()[1].theta == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(c2.points()[2].theta == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(c2.points()[3].theta == doctest::Approx(3 * kPi / 2).epsilon(1e-15));
}

TEST_CASE("build_y00: spacing, antipodality, bit arrangement") {
  for (int m : {2, 3, 4, 5, 16}) {
    auto c = Y00Constellation::build(m, 1.0);
    const auto& pts = c.points();
    REQUIRE(static_cast<int>(pts.size()) == 2 * m);

    // uniform spacing pi/M (up to rounding in the angle construction)
    for (int i = 0; i + 1 < 2 * m; ++i)
      CHECK(std::fabs((pts[i + 1].theta - pts[i].theta) - c.step()) < 2e-15);

    // point p and p+M are exact antipodes by construction
    for (int p = 0; p < m; ++p)
      CHECK(c.theta_of_index(p + m) == canonical_angle(c.theta_of_index(p) + kPi));

    // adjacent points carry opposite bits; the antipodal pairing forces
    // exactly two seams when M is even and none when M is odd
    int seams = 0;
    for (int i = 0; i < 2 * m; ++i)
      if (pts[i].bit == pts[(i + 1) % (2 * m)].bit) ++seams;
    CHECK(seams == (m % 2 == 0 ? 2 : 0));

    // parity convention: an even running key carries bit 0 at its base point
    for (int j = 1; j <= m; ++j) {
      const int base = c.encode_index(j, j % 2);  // bit = parity(j) sits at theta_j
      CHECK(base == j - 1);
    }
  }
}

TEST_CASE("encode_phase: placement rule, OSK identity, validation") {
  auto c = Y00Constellation::build(2, 1.0);
  // M=2, key=1, bit=0: parity(1)=1 flips placement to pi
  CHECK(c.encode_phase(1, 0).theta == doctest::Approx(kPi).epsilon(1e-15));

  auto c4 = Y00Constellation::build(4, 2.0);
  for (int j = 1; j <= 4; ++j)
    for (int b : {0, 1}) CHECK(c4.encode_index(j, b, 0) == c4.encode_index(j, b));

  CHECK_THROWS_AS(c4.encode_phase(0, 0), InvalidParameter);
  CHECK_THROWS_AS(c4.encode_phase(5, 0), InvalidParameter);
  CHECK_THROWS_AS(c4.encode_phase(1, 2), InvalidParameter);
  CHECK_THROWS_AS(c4.encode_phase(1, 0, 3), InvalidParameter);
  CHECK_THROWS_AS(Y00Constellation::build(0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(Y00Constellation::build(2, 0.0), InvalidParameter);

  // an osk bit may only accompany an enabled OSK configuration
  OskConfig off{false}, on{true};
  CHECK_THROWS_AS(c4.encode_phase(1, 0, off, 1), InvalidParameter);
  CHECK(c4.encode_phase(1, 0, off, std::nullopt).theta == c4.encode_phase(1, 0).theta);
  CHECK(c4.encode_phase(1, 0, on, 1).theta == c4.encode_phase(1, 0, 1).theta);
  auto q4 = QndmConstellation::build(4, 1.0);
  CHECK_THROWS_AS(q4.encode_phase(1, 1, 0, off, 0), InvalidParameter);
  CHECK(q4.encode_phase(1, 2, 1, on, 1).theta == q4.encode_phase(1, 2, 1, 1).theta);
}

TEST_CASE("encode/decode round trip is exact, with and without OSK") {
  for (int m : {1, 2, 3, 6}) {
    auto c = Y00Constellation::build(m, 1.0);
    for (int j = 1; j <= m; ++j)
      for (int b : {0, 1})
        for (int osk : {0, 1}) {
          const PhasePoint p = c.encode_phase(j, b, osk);
          CHECK(c.decode_bit(p.theta, j, osk) == b);
        }
  }
  auto c = Y00Constellation::build(4, 1.0);
  CHECK_THROWS_AS(c.decode_bit(0.1, 1), InvalidParameter);              // off-grid
  CHECK_THROWS_AS(c.decode_bit(c.encode_phase(2, 0).theta, 1), InvalidParameter);  // wrong basis
}

TEST_CASE("OSK makes the map non-injective in (bit, osk) but injective in (key, b')") {
  auto c = Y00Constellation::build(4, 1.0);
  for (int j = 1; j <= 4; ++j)
    for (int b : {0, 1})
      for (int osk : {0, 1}) {
        // the complementary pair lands on the same phase
        CHECK(c.encode_index(j, b, osk) == c.encode_index(j, b ^ 1, osk ^ 1));
      }
  std::set<int> indices;
  for (int j = 1; j <= 4; ++j)
    for (int b : {0, 1}) indices.insert(c.encode_index(j, b));
  CHECK(indices.size() == 8);
}

TEST_CASE("adjacent-signal overlap grows toward 1 with M (quantum noise masking)") {
  double prev = -1.0;
  for (int m : {2, 4, 8, 16, 32, 64, 128, 256}) {
    auto c = Y00Constellation::build(m, 1.0);
    const cxd s0 = std::polar(1.0, c.points()[0].theta);
    const cxd s1 = std::polar(1.0, c.points()[1].theta);
    const double ov = std::norm(coherent_overlap(s0, s1));
    CHECK(ov == doctest::Approx(std::exp(-2.0 * (1.0 - std::cos(kPi / m)))).epsilon(1e-12));
    CHECK(ov > prev);
    prev = ov;
  }
  CHECK(prev > 0.999);
}

TEST_CASE("build_qndm: geometry, identity pattern, cyclic key pairings") {
  CHECK_THROWS_AS(QndmConstellation::build(1, 1.0), InvalidParameter);

  for (int m : {2, 3, 4, 8, 16}) {
    auto q = QndmConstellation::build(m, 1.0);
    CHECK(static_cast<int>(q.points().size()) == 2 * m * m);
    CHECK(q.delta() == doctest::Approx((kPi / m) / m).epsilon(1e-16));

    // every block holds each K^{R1} exactly once, and the (k1, bit) content
    // is shared by all blocks of a half circle; the antipodal half carries
    // the complementary bits (the pairing a valid binary encoding forces)
    std::set<std::pair<int, int>> upper_ref, lower_ref;
    for (int bl = 0; bl < q.block_count(); ++bl) {
      std::set<int> k1s;
      std::set<std::pair<int, int>> content;
      for (int s = 0; s < m; ++s) {
        const LabeledPhase p = q.labels_of_index(bl * m + s);
        k1s.insert(p.k1);
        content.insert({p.k1, p.bit});
      }
      CHECK(static_cast<int>(k1s.size()) == m);
      auto& ref = bl < m ? upper_ref : lower_ref;
      if (ref.empty())
        ref = content;
      else
        CHECK(content == ref);
    }
    std::set<std::pair<int, int>> complemented;
    for (const auto& [k1, bit] : upper_ref) complemented.insert({k1, bit ^ 1});
    CHECK(lower_ref == complemented);

    // fine-scale bit alternation: even M shows exactly the two antipodal
    // seams, matching the Y-00 arrangement
    if (m % 2 == 0) {
      const int total = 2 * m * m;
      int seams = 0;
      for (int g = 0; g < total; ++g)
        if (q.labels_of_index(g).bit == q.labels_of_index((g + 1) % total).bit) ++seams;
      CHECK(seams == 2);
    }

    // all (k1, k2, bit) triples map to distinct grid points
    std::set<int> seen;
    for (int k1 = 1; k1 <= m; ++k1)
      for (int k2 = 1; k2 <= m; ++k2)
        for (int b : {0, 1}) seen.insert(q.encode_index(k1, k2, b));
    CHECK(static_cast<int>(seen.size()) == 2 * m * m);
  }

  // L_1 is the identity pattern: under k1 = 1, label j selects communication
  // basis theta_j with no fine offset (bit placement follows K^{R1} parity)
  auto q = QndmConstellation::build(4, 1.0);
  for (int j = 1; j <= 4; ++j)
    for (int b : {0, 1}) {
      const int g = q.encode_index(1, j, b);
      CHECK(q.block_of_index(g) % 4 == j - 1);
      CHECK(q.slot_of_index(g) == 0);
      // the two bit values select the antipodal blocks of the same basis
      CHECK(q.encode_index(1, j, b ^ 1) == (g + 16) % 32);
    }

  // M=3: the second block pairs (k1, k2) = (1,2), (2,3), (3,1)
  auto q3 = QndmConstellation::build(3, 1.0);
  for (int s = 0; s < 3; ++s) {
    const LabeledPhase p = q3.labels_of_index(3 + s);  // second block
    CHECK(p.k1 == s + 1);
    CHECK(p.k2 == (s + 1) % 3 + 1);
  }
}

TEST_CASE("encode_qndm_phase: worked examples and validation") {
  auto q = QndmConstellation::build(4, 1.0);
  // (k1=1, k2=1) with the odd-key bit value sits at theta_1 + 0 in Gamma_1
  const int g11 = q.encode_index(1, 1, 1);
  CHECK(g11 == 0);
  CHECK(q.encode_phase(1, 1, 1).theta == 0.0);
  // (k1=2, k2=3): theta_2 + delta in Gamma_2 (even key carries bit 0 there)
  const int g23 = q.encode_index(2, 3, 0);
  CHECK(q.block_of_index(g23) == 1);
  CHECK(q.slot_of_index(g23) == 1);
  CHECK(q.encode_phase(2, 3, 0).theta ==
        doctest::Approx(kPi / 4 + q.delta()).epsilon(1e-15));

  // OSK xor identity
  for (int k1 = 1; k1 <= 4; ++k1)
    for (int k2 = 1; k2 <= 4; ++k2)
      for (int b : {0, 1}) {
        CHECK(q.encode_index(k1, k2, b, 0) == q.encode_index(k1, k2, b));
        CHECK(q.encode_index(k1, k2, b, 1) == q.encode_index(k1, k2, b ^ 1));
      }

  CHECK_THROWS_AS(q.encode_phase(0, 1, 0), InvalidParameter);
  CHECK_THROWS_AS(q.encode_phase(1, 5, 0), InvalidParameter);
}

TEST_CASE("apply_dsr: zero-width, uniform statistics, bounded support") {
  const PhasePoint p(1.0, 2.0);
  DsrConfig zero;
  zero.strength = 0.0;
  CHECK(apply_dsr(p, zero, [] { return 0.77; }).theta == p.theta);

  // empirical mean of the dither stays on the carrier within 3 sigma
  DsrConfig cfg = DsrConfig::validated(2.0, 2.0);
  CounterRng rng(31, 7);
  std::uint64_t i = 0;
  const std::size_t n = 100000;
  double sum = 0.0;
  double max_dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const PhasePoint r = apply_dsr(p, cfg, [&] { return rng.uniform01(i++); });
    const double d = angular_distance(r.theta, p.theta);
    max_dev = std::max(max_dev, d);
    sum += (canonical_angle(r.theta - p.theta + kPi) - kPi);  // signed offset
  }
  const double half = cfg.strength / p.amplitude;
  const double sigma_mean = (half / std::sqrt(3.0)) / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(sum / n) < 3.0 * sigma_mean);
  CHECK(max_dev <= half + 1e-12);

  // |R_p| = pi |alpha| / 2: support never exceeds +-pi/2
  DsrConfig wide;
  wide.strength = kPi * p.amplitude / 2.0;
  for (std::size_t k = 0; k < 20000; ++k) {
    const PhasePoint r = apply_dsr(p, wide, [&] { return rng.uniform01(i++); });
    CHECK(angular_distance(r.theta, p.theta) <= kPi / 2.0 + 1e-12);
  }

  // operating-range checks
  CHECK_THROWS_AS(DsrConfig::validated(0.5, 2.0), InvalidParameter);
  CHECK_THROWS_AS(DsrConfig::validated(3.2, 2.0), InvalidParameter);  // > pi alpha / 2
  CHECK(DsrConfig::validated(kPi, 2.0).strength == doctest::Approx(kPi));
}

TEST_CASE("masking metrics: formula anchors and the Lambda condition") {
  auto q = QndmConstellation::build(100, 100.0);
  MaskingReport r = masking_metrics(q, 1.0);
  CHECK(r.gamma_q == doctest::Approx(100.0 / (kPi * 100.0)).epsilon(1e-12));

  MaskingReport r0 = masking_metrics(q, 0.0);
  CHECK(r0.gamma_q == 0.0);
  CHECK(r0.masked_points == 0);
  CHECK_FALSE(r0.condition_met);

  auto q2 = QndmConstellation::build(200, 100.0);
  CHECK(masking_metrics(q2, 1.0).gamma_q == doctest::Approx(2.0 * r.gamma_q).epsilon(1e-12));

  // the masked experiment configuration used throughout: M=16, alpha=0.5
  auto masked = QndmConstellation::build(16, 0.5);
  MaskingReport mr = masking_metrics(masked, 1.0, 5.0);
  CHECK(mr.condition_met);
  CHECK(mr.gamma_q >= 5.0);
  // same condition, unmasked at strong amplitude
  CHECK_FALSE(masking_metrics(QndmConstellation::build(16, 16.0), 1.0, 5.0).condition_met);

  // Y-00 wrapper agrees with the Gamma_Q >= Lambda reading
  auto y = Y00Constellation::build(64, 1.0);
  MaskingReport my = masking_metrics(y, 1.0, 5.0);
  CHECK(my.condition_met == (my.gamma_q >= 5.0));
}

TEST_CASE("PhasePoint canonicalization and validation") {
  CHECK(PhasePoint(-kPi, 1.0).theta == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(PhasePoint(2.0 * kTwoPi + 0.25, 1.0).theta == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(PhasePoint(0.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(PhasePoint(std::nan(""), 1.0), InvalidParameter);
}
