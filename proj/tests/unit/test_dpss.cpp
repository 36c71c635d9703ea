#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slepsense/dpss.hpp"
#include "slepsense/envelope.hpp"

using namespace slepsense;

namespace {
constexpr double kPi = std::numbers::pi;

// independent oracle: dense symmetric eigendecomposition of the sinc kernel
struct DenseOracle {
  Eigen::MatrixXd vectors;     // column j = order j
  Eigen::VectorXd eigenvalues; // descending = order ascending
};

DenseOracle dense_sinc_eigensolve(int n, double w) {
  Eigen::MatrixXd kernel(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      kernel(i, j) = i == j ? 2.0 * w
                            : std::sin(2.0 * kPi * w * (i - j)) / (kPi * (i - j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel);
  DenseOracle oracle;
  oracle.vectors.resize(n, n);
  oracle.eigenvalues.resize(n);
  for (int k = 0; k < n; ++k) {
    oracle.eigenvalues[k] = solver.eigenvalues()[n - 1 - k];
    oracle.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return oracle;
}
}  // namespace

TEST_CASE("dpss: 1x1 kernel equals 2W") {
  const auto seq = generate_dpss({1, 0.25, 1.0, 0});
  REQUIRE(seq.values.size() == 1);
  CHECK(seq.values[0] == doctest::Approx(1.0));
  CHECK(seq.concentration == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dpss: parameter validation") {
  CHECK_THROWS_AS(generate_dpss({64, 0.6, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_dpss({64, 0.0, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_dpss({64, 0.1, 1.0, 64}), std::invalid_argument);
  CHECK_THROWS_AS(generate_dpss({64, 0.1, -1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_dpss({0, 0.1, 1.0, 0}), std::invalid_argument);
}

TEST_CASE("dpss: eigenvalue matches the dense sinc-kernel oracle") {
  const int n = 64;
  const double w = 4.0 / 64;
  const auto oracle = dense_sinc_eigensolve(n, w);
  const auto seq = generate_dpss({n, w, 1.0, 0});
  CHECK(std::abs(seq.concentration - oracle.eigenvalues[0]) < 1e-10);
}

TEST_CASE("dpss: NW=4 orders below 2*NW-1 are at least 70% concentrated") {
  const auto seqs = generate_dpss_orders(64, 4.0 / 64, 1.0, {0, 1, 2, 3});
  for (const auto& s : seqs) CHECK(s.concentration >= 0.70);
}

TEST_CASE("dpss: oracle equivalence across N and W") {
  for (int n : {16, 48, 128, 256}) {
    for (double w : {1.0 / 32, 1.0 / 16, 1.0 / 8}) {
      const auto oracle = dense_sinc_eigensolve(n, w);
      std::vector<int> orders;
      for (int k = 0; k < std::min(n, 12); ++k) orders.push_back(k);
      const auto seqs = generate_dpss_orders(n, w, 1.0, orders);
      for (const auto& seq : seqs) {
        const int k = seq.params.order;
        CHECK(std::abs(seq.concentration - oracle.eigenvalues[k]) < 1e-10);
        // eigenvectors are only individually identifiable when the kernel
        // eigenvalue is separated from its neighbours
        double gap = std::numeric_limits<double>::infinity();
        if (k > 0) gap = std::min(gap, oracle.eigenvalues[k - 1] - oracle.eigenvalues[k]);
        if (k + 1 < n) gap = std::min(gap, oracle.eigenvalues[k] - oracle.eigenvalues[k + 1]);
        if (gap < 1e-6) continue;
        Eigen::VectorXd ref = oracle.vectors.col(k);
        Eigen::Map<const Eigen::VectorXd> got(seq.values.data(), n);
        if (ref.dot(got) < 0.0) ref = -ref;
        CHECK((ref - got).cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
}

TEST_CASE("dpss: W=1/2 kernel degenerates to the identity") {
  const auto seqs = generate_dpss_orders(32, 0.5, 1.0, {0, 5, 17, 31});
  for (const auto& s : seqs)
    CHECK(s.concentration == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dpss: concentrations strictly decrease in order") {
  const auto seqs =
      generate_dpss_orders(64, 1.0 / 16, 1.0, {0, 1, 2, 3, 4, 5, 6, 7, 8});
  for (std::size_t i = 1; i < seqs.size(); ++i)
    CHECK(seqs[i].concentration < seqs[i - 1].concentration);
}

TEST_CASE("dpss: >=70% concentration for k < 2*floor(NW)-1") {
  for (int n : {64, 128}) {
    for (int nw = 2; nw <= 8; ++nw) {
      std::vector<int> orders;
      for (int k = 0; k < 2 * nw - 1; ++k) orders.push_back(k);
      const auto seqs = generate_dpss_orders(n, double(nw) / n, 1.0, orders);
      for (const auto& s : seqs) CHECK(s.concentration >= 0.70);
    }
  }
}

TEST_CASE("dpss: orthonormal basis for fixed N, W") {
  const int n = 48;
  std::vector<int> orders(n);
  for (int k = 0; k < n; ++k) orders[k] = k;
  const auto seqs = generate_dpss_orders(n, 1.0 / 8, 1.0, orders);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += seqs[a].values[i] * seqs[b].values[i];
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("dpss: symmetry and sign conventions") {
  const auto seqs = generate_dpss_orders(65, 1.0 / 16, 1.0, {0, 1, 2, 3, 4, 5});
  for (const auto& s : seqs) {
    const int n = s.params.length;
    const int k = s.params.order;
    const double sgn = k % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i)
      CHECK(s.values[i] == doctest::Approx(sgn * s.values[n - 1 - i]).epsilon(1e-12));
    if (k % 2 == 0) {
      double sum = 0.0;
      for (double v : s.values) sum += v;
      CHECK(sum > 0.0);
    } else {
      for (double v : s.values) {
        if (std::abs(v) > 1e-12) {
          CHECK(v > 0.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("dpswf: grid and symmetry properties") {
  const double dt = 2e-6;
  const auto seqs = generate_dpss_orders(64, 4.0 / 64, dt, {0, 1, 2});
  CHECK_THROWS_AS(dpswf(seqs[0], 64), std::invalid_argument);

  const auto wf0 = dpswf(seqs[0], 16 * 64 + 1);
  // order 0 is positive and symmetric: |U| peaks at omega = 0
  double peak = 0.0;
  std::size_t peak_i = 0;
  for (std::size_t i = 0; i < wf0.values.size(); ++i) {
    if (std::abs(wf0.values[i]) > peak) {
      peak = std::abs(wf0.values[i]);
      peak_i = i;
    }
  }
  CHECK(std::abs(wf0.grid[peak_i]) < 1e-9);

  for (const auto& seq : seqs) {
    const auto wf = dpswf(seq, 16 * 64 + 1);
    const std::size_t m = wf.values.size();
    const double sgn = seq.params.order % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < m; ++i)
      CHECK(wf.values[i] == doctest::Approx(sgn * wf.values[m - 1 - i])
                                .epsilon(1e-9)
                                .scale(peak));
  }
}

TEST_CASE("dpswf: band-power ratio reproduces the eigenvalue") {
  const double dt = 1e-5;
  const auto seq = generate_dpss({64, 4.0 / 64, dt, 0});
  const auto wf = dpswf(seq, 16 * 64 + 1);
  const double ratio = spectral_concentration(wf, seq.params.band_edge());
  CHECK(std::abs(ratio - seq.concentration) < 1e-6);
}

TEST_CASE("spectral_concentration: limits") {
  const double dt = 1.0;
  const auto seq = generate_dpss({32, 0.1, dt, 1});
  const auto wf = dpswf(seq, 512 + 1);
  CHECK(spectral_concentration(wf, kPi / dt) == doctest::Approx(1.0));
  CHECK(spectral_concentration(wf, 1e-12) < 1e-6);
  Wavefunction bad;
  bad.grid = {0.0};
  bad.values = {1.0};
  CHECK_THROWS_AS(spectral_concentration(bad, 0.5), std::invalid_argument);
}

TEST_CASE("flat_top_envelope: shapes and crossing counts") {
  const auto constant = flat_top_envelope(10, 0, 1.0);
  for (const auto& s : constant.samples) CHECK(s.real() == doctest::Approx(1.0));

  const auto echo = flat_top_envelope(8, 1, 1.0);
  const double expect[] = {1, 1, 1, 1, -1, -1, -1, -1};
  for (int i = 0; i < 8; ++i)
    CHECK(echo.samples[i].real() == doctest::Approx(expect[i]));

  const auto ft3 = flat_top_envelope(64, 3, 1.0);
  int crossings = 0;
  for (int i = 1; i < 64; ++i)
    if (ft3.samples[i].real() * ft3.samples[i - 1].real() < 0.0) ++crossings;
  CHECK(crossings == 3);

  CHECK_THROWS_AS(flat_top_envelope(8, 8, 1.0), std::invalid_argument);
}

TEST_CASE("leakage_ratio: identity, scale invariance and NW=4 range") {
  const double dt = 1e-5;
  const int n = 64;
  const double w = 4.0 / 64;
  const double wb = 2.0 * kPi * w / dt;
  const auto seqs = generate_dpss_orders(n, w, dt, {0, 1, 2, 3});
  for (int k = 0; k < 4; ++k) {
    const auto dw = dpswf(seqs[k], 16 * n + 1);
    CHECK(leakage_ratio_db(dw, dw, wb) == doctest::Approx(0.0).epsilon(1e-12));

    const auto flat = flat_top_envelope(n, k, dt);
    std::vector<double> fv(n);
    for (int i = 0; i < n; ++i) fv[i] = flat.samples[i].real();
    const auto fw = sequence_wavefunction(fv, dt, 16 * n + 1);
    const double l = leakage_ratio_db(dw, fw, wb);
    CHECK(l >= 25.0);
    CHECK(l <= 90.0);

    // ratio of ratios: uniform rescaling of either input cancels
    Wavefunction fw_scaled = fw;
    for (auto& v : fw_scaled.values) v *= 7.5;
    CHECK(leakage_ratio_db(dw, fw_scaled, wb) == doctest::Approx(l).epsilon(1e-12));
  }
}
