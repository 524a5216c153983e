// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line.  Runs against the experiment-scale fixtures and the CLI binary.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>
#include <vector>

#include "rsvd/rsvd.hpp"
#include "support/cli.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using rsvd::DenseMatrix;
using rsvd::Index;
using rsvd::RangeMode;
using rsvd::Rng;
using rsvd::SketchConfig;
using rsvd::Vector;

namespace {

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << "[acceptance] C" << id << ' ' << name << ": "
            << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << "  (" << detail << ')';
  std::cout << std::endl;
  REQUIRE(pass);
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  return v[mid];
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace

TEST_CASE("bound soundness for the basic sketch", "[acceptance][c1]") {
  Timer timer;
  const auto& fix = fixtures::gap_matrix(10.0);
  const Index k = 20, p = 5;
  const double bound = rsvd::bound_basic(k, p, 3000, 300, fix.sigma(k));

  int covered = 0;
  std::vector<double> errors;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    const DenseMatrix q = rsvd::fixed_rank_range(fix.a, k, p, rng);
    const double err = rsvd::computed_range_error(fix.a, q);
    errors.push_back(err);
    if (err <= bound) ++covered;
  }
  const double median = median_of(errors);
  const double elapsed = timer.seconds();

  std::ostringstream detail;
  detail << "covered " << covered << "/100, median " << median << " vs bound/2 "
         << bound / 2 << ", " << elapsed << " s";
  report(1, "bound soundness (basic)",
         covered >= 95 && median < bound / 2.0 && elapsed <= 120.0, detail.str());
}

TEST_CASE("bound soundness for power and subspace iteration", "[acceptance][c2]") {
  const auto& fix = fixtures::gap_matrix(10.0);
  const Index k = 20, p = 5;
  const int q = 1;

  int covered_power = 0, covered_ortho = 0;
  bool constant_bound = true;
  const double bound_pw = rsvd::bound_power(k, p, q, 3000, 300, fix.sigma(k));
  const double bound_or = rsvd::bound_ortho(k, p, q, fix.sigma, 3000, 300, false);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng r1(seed), r2(seed);
    const DenseMatrix qp = rsvd::power_range(fix.a, k, p, q, r1);
    const DenseMatrix qo = rsvd::subspace_iter_range(fix.a, k, p, q, r2);
    if (rsvd::computed_range_error(fix.a, qp) <= bound_pw) ++covered_power;
    if (rsvd::computed_range_error(fix.a, qo) <= bound_or) ++covered_ortho;
    // Fixed parameters: re-evaluating the estimator must give the same bits.
    if (rsvd::bound_power(k, p, q, 3000, 300, fix.sigma(k)) != bound_pw) {
      constant_bound = false;
    }
    if (rsvd::bound_ortho(k, p, q, fix.sigma, 3000, 300, false) != bound_or) {
      constant_bound = false;
    }
  }

  std::ostringstream detail;
  detail << "power " << covered_power << "/100, ortho " << covered_ortho
         << "/100, bounds constant " << (constant_bound ? "yes" : "no");
  report(2, "bound soundness (power, ortho)",
         covered_power >= 95 && covered_ortho >= 95 && constant_bound, detail.str());
}

TEST_CASE("power iteration sharpens the sketch", "[acceptance][c3]") {
  const auto& fix = fixtures::gap_matrix(10.0);
  const Index k = 20, p = 5;

  double mean_err[3] = {0.0, 0.0, 0.0};
  for (int q = 0; q <= 2; ++q) {
    std::vector<double> errs;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      Rng rng(seed);
      const DenseMatrix qb = rsvd::power_range(fix.a, k, p, q, rng);
      errs.push_back(rsvd::computed_range_error(fix.a, qb));
    }
    mean_err[q] = mean_of(errs);
  }

  DenseMatrix d = DenseMatrix::Zero(3, 3);
  d.diagonal() << 2.0, 1.0, 0.5;
  const Vector sv = oracle::singular_values((d * d.transpose()) * d);
  const bool spectrum_ok = std::abs(sv(0) - 8.0) < 1e-10 &&
                           std::abs(sv(1) - 1.0) < 1e-10 &&
                           std::abs(sv(2) - 0.125) < 1e-10;

  std::ostringstream detail;
  detail << "means " << mean_err[0] << " > " << mean_err[1] << " > " << mean_err[2]
         << ", powered spectrum " << (spectrum_ok ? "exact" : "off");
  report(3, "power-iteration gain",
         mean_err[0] > mean_err[1] && mean_err[1] > mean_err[2] && spectrum_ok,
         detail.str());
}

TEST_CASE("computed errors respect the Eckart-Young floor", "[acceptance][c4]") {
  const Index k = 6, p = 4;
  int violations = 0;
  int runs = 0;

  for (std::uint64_t mseed : {101, 102, 103}) {
    const DenseMatrix a = oracle::random_matrix(60, 40, mseed);
    const Vector sv = oracle::singular_values(a);
    const double floor = sv(k + p) - 1e-8 * sv(0);
    const DenseMatrix a_sym = oracle::random_symmetric(60, mseed + 100);
    const Vector sv_sym = oracle::singular_values(a_sym);
    const double floor_sym = sv_sym(k + p) - 1e-8 * sv_sym(0);

    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      Rng r1(seed), r2(seed), r3(seed), r4(seed), r5(seed);
      const double e_basic =
          rsvd::computed_range_error(a, rsvd::fixed_rank_range(a, k, p, r1));
      const double e_power =
          rsvd::computed_range_error(a, rsvd::power_range(a, k, p, 1, r2));
      const double e_ortho =
          rsvd::computed_range_error(a, rsvd::subspace_iter_range(a, k, p, 1, r3));
      const double e_spg = oracle::spectral_norm(
          a - rsvd::spsvd_general(a, k, p, r4).reconstruct());
      const double e_sph = oracle::spectral_norm(
          a_sym - rsvd::spevd_hermitian(a_sym, k, p, r5).reconstruct());
      runs += 5;
      if (e_basic < floor) ++violations;
      if (e_power < floor) ++violations;
      if (e_ortho < floor) ++violations;
      if (e_spg < floor) ++violations;
      if (e_sph < floor_sym) ++violations;
    }
  }

  std::ostringstream detail;
  detail << violations << " violations in " << runs << " runs";
  report(4, "Eckart-Young floor", violations == 0, detail.str());
}

TEST_CASE("exact-rank matrices are recovered exactly", "[acceptance][c5]") {
  const Index k = 5, p = 5;
  int violations = 0;
  int runs = 0;

  for (std::uint64_t mseed : {301, 302, 303}) {
    const DenseMatrix a = oracle::planted_rank(40, 30, 5, mseed);
    const double norm = oracle::spectral_norm(a);
    const DenseMatrix a_sym = oracle::planted_rank_symmetric(30, 5, mseed + 100);
    const double norm_sym = oracle::spectral_norm(a_sym);

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      for (auto mode : {RangeMode::basic, RangeMode::power, RangeMode::power_ortho}) {
        const SketchConfig cfg{k, p, 1, mode, seed};
        const double err = oracle::spectral_norm(a - rsvd::rsvd(a, cfg).reconstruct());
        ++runs;
        if (err > 1e-10 * norm) ++violations;
      }
      Rng r4(seed), r5(seed);
      const double e_spg =
          oracle::spectral_norm(a - rsvd::spsvd_general(a, k, p, r4).reconstruct());
      const double e_sph = oracle::spectral_norm(
          a_sym - rsvd::spevd_hermitian(a_sym, k, p, r5).reconstruct());
      runs += 2;
      if (e_spg > 1e-7 * norm) ++violations;
      if (e_sph > 1e-7 * norm_sym) ++violations;
    }
  }

  std::ostringstream detail;
  detail << violations << " violations in " << runs << " runs";
  report(5, "exact-rank recovery", violations == 0, detail.str());
}

TEST_CASE("single-pass algorithms touch A exactly once", "[acceptance][c6]") {
  bool pass = true;
  std::ostringstream detail;
  for (std::uint64_t seed : {1, 2, 3}) {
    {
      const DenseMatrix a = oracle::random_symmetric(35, seed);
      rsvd::CountingOperator op(a);
      Rng rng(seed);
      rsvd::spevd_hermitian(op, 4, 3, rng);
      if (op.apply_count() != 1 || op.adjoint_count() != 0) pass = false;
    }
    {
      const DenseMatrix a = oracle::random_matrix(40, 25, seed + 10);
      rsvd::CountingOperator op(a);
      Rng rng(seed);
      rsvd::spsvd_general(op, 4, 3, rng);
      if (op.apply_count() != 1 || op.adjoint_count() != 1) pass = false;
    }
  }
  detail << "EVD: 1 apply of A; SVD: 1 of A + 1 of A^T, every invocation";
  report(6, "single-pass contract", pass, detail.str());
}

TEST_CASE("canonical angles sit below their bounds and shrink with q",
          "[acceptance][c7]") {
  const auto& fix = fixtures::gap_matrix(2.0);
  const Index k = 25, p = 5;
  const DenseMatrix u_k = fix.u.leftCols(k);
  const int trials = 100;

  int covered_by_q[3] = {0, 0, 0};
  std::vector<Vector> mean_sines(3, Vector::Zero(k));
  for (int q = 0; q <= 2; ++q) {
    for (std::uint64_t seed = 1; seed <= trials; ++seed) {
      Rng rng(seed);
      const SketchConfig cfg{k, p, q, RangeMode::power, seed};
      const rsvd::SvdApprox f = rsvd::rsvd(fix.a, cfg, rng);
      const Vector sines = rsvd::canonical_sines(f.U, u_k);
      mean_sines[q] += sines / trials;

      Rng redraw(seed);
      const DenseMatrix omega = rsvd::gaussian(300, k + p, redraw);
      const rsvd::AngleBounds bounds =
          rsvd::angle_bounds(fix.v, omega, fix.sigma, k, q);
      bool all_below = true;
      for (Index j = 0; j < k; ++j) {
        if (sines(j) > bounds.sin_theta(j)) all_below = false;
      }
      if (all_below) ++covered_by_q[q];
    }
  }

  bool monotone = true;
  for (Index j = 0; j < 15; ++j) {
    if (!(mean_sines[1](j) < mean_sines[0](j)) ||
        !(mean_sines[2](j) < mean_sines[1](j))) {
      monotone = false;
    }
  }

  // q = 0 collapses the three Stage-1 variants onto the same subspace.
  bool identical_at_q0 = true;
  for (std::uint64_t seed : {1, 7, 13}) {
    std::vector<Vector> per_mode;
    for (auto mode : {RangeMode::basic, RangeMode::power, RangeMode::power_ortho}) {
      Rng rng(seed);
      const SketchConfig cfg{k, p, 0, mode, seed};
      const rsvd::SvdApprox f = rsvd::rsvd(fix.a, cfg, rng);
      per_mode.push_back(rsvd::canonical_sines(f.U, u_k));
    }
    for (std::size_t i = 1; i < per_mode.size(); ++i) {
      if ((per_mode[i] - per_mode[0]).cwiseAbs().maxCoeff() > 1e-9) {
        identical_at_q0 = false;
      }
    }
  }

  std::ostringstream detail;
  detail << "coverage q0/q1/q2 = " << covered_by_q[0] << '/' << covered_by_q[1] << '/'
         << covered_by_q[2] << " of " << trials << ", mean sines monotone "
         << (monotone ? "yes" : "no") << ", q=0 variants identical "
         << (identical_at_q0 ? "yes" : "no");
  report(7, "canonical angles",
         covered_by_q[0] >= 95 && covered_by_q[1] >= 95 && covered_by_q[2] >= 95 &&
             monotone && identical_at_q0,
         detail.str());
}

TEST_CASE("bound formulas collapse algebraically", "[acceptance][c8]") {
  bool pass = true;
  std::mt19937_64 eng(17);
  for (int point = 0; point < 50; ++point) {
    const Index k = 2 + static_cast<Index>(eng() % 40);
    const Index p = 2 + static_cast<Index>(eng() % 30);
    const Index n = k + p + static_cast<Index>(eng() % 400);
    const Index m = n + static_cast<Index>(eng() % 1500);
    const double s = 0.01 + static_cast<double>(eng() % 1000) / 500.0;
    const double basic = rsvd::bound_basic(k, p, m, n, s);
    const double power0 = rsvd::bound_power(k, p, 0, m, n, s);
    if (std::abs(basic - power0) > 1e-12 * basic) pass = false;

    const int q = static_cast<int>(eng() % 3);
    Vector sig(n);
    for (Index i = 0; i < n; ++i) {
      sig(i) = i < k ? s + 1.0 / (1.0 + static_cast<double>(i)) : s;
    }
    const double full = rsvd::bound_ortho(k, p, q, sig, m, n, false);
    const double flat = rsvd::bound_ortho(k, p, q, sig, m, n, true);
    if (std::abs(full - flat) > 1e-12 * flat) pass = false;
  }
  report(8, "algebraic identities", pass, "50-point grid, 1e-12 relative");
}

TEST_CASE("image pipeline errors behave as expected", "[acceptance][c9]") {
  Timer timer;
  const std::filesystem::path image = std::filesystem::path(RSVD_DATA_DIR) /
                                      "test_image.pgm";
  const auto dir = cli::temp_dir("acceptance-image");

  rsvd::ImageOptions opt;
  opt.in = image;
  opt.out_dir = dir;
  opt.alg = "basic";
  opt.k_list = {10, 50, 100, 400, 800};
  opt.p = 0;
  opt.seed = 1;
  const int rc = rsvd::run_image(opt);
  bool decreasing = rc == 0;
  std::vector<double> errs;
  if (rc == 0) {
    const auto lines = cli::data_lines(dir / "errors.csv");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::istringstream row(lines[i]);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(row, cell, ',')) cells.push_back(cell);
      errs.push_back(std::stod(cells[4]));
    }
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
      if (!(errs[i] > errs[i + 1])) decreasing = false;
    }
  }

  // Oversampling comparison at fixed k = 50 over 10 seeds.
  const DenseMatrix a = rsvd::read_pgm(image);
  const double fro = a.norm();
  double mean_p0 = 0.0, mean_p10 = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (const Index p : {Index{0}, Index{10}}) {
      const SketchConfig cfg{50, p, 0, RangeMode::basic, seed};
      const rsvd::SvdApprox f = rsvd::truncate(rsvd::rsvd(a, cfg), 50);
      const double err = (a - f.reconstruct()).norm() / fro;
      (p == 0 ? mean_p0 : mean_p10) += err / 10.0;
    }
  }
  const double elapsed = timer.seconds();

  std::ostringstream detail;
  detail << "k-sweep decreasing " << (decreasing ? "yes" : "no") << ", mean(p=10) "
         << mean_p10 << " < mean(p=0) " << mean_p0 << ", " << elapsed << " s";
  report(9, "image pipeline", decreasing && mean_p10 < mean_p0 && elapsed <= 60.0,
         detail.str());
}

TEST_CASE("CLI reruns are bit-identical", "[acceptance][c10]") {
  bool pass = true;
  std::ostringstream detail;

  auto check = [&](const std::string& label, const std::string& args,
                   const std::vector<std::string>& files) {
    const auto d1 = cli::temp_dir("acceptance-rerun");
    const auto d2 = cli::temp_dir("acceptance-rerun");
    const auto r1 = cli::run(args + " --out-dir " + d1.string(), d1);
    const auto r2 = cli::run(args + " --out-dir " + d2.string(), d2);
    if (r1.exit_code != 0 || r2.exit_code != 0) {
      pass = false;
      detail << label << " exit codes " << r1.exit_code << '/' << r2.exit_code << "; ";
      return;
    }
    for (const auto& f : files) {
      if (cli::data_lines(d1 / f) != cli::data_lines(d2 / f)) {
        pass = false;
        detail << label << ' ' << f << " differs; ";
      }
    }
  };

  const auto fixture_dir = cli::temp_dir("acceptance-fixture");
  const DenseMatrix small = oracle::planted_rank(18, 12, 4, 9);
  rsvd::write_matrix_csv(small, fixture_dir / "a.csv");
  DenseMatrix img(20, 30);
  std::mt19937_64 eng(8);
  for (Index i = 0; i < img.rows(); ++i) {
    for (Index j = 0; j < img.cols(); ++j) img(i, j) = static_cast<double>(eng() % 256);
  }
  rsvd::write_pgm(img, fixture_dir / "img.pgm");

  check("svd", "svd --in " + (fixture_dir / "a.csv").string() +
                   " --alg power --k 4 --p 2 --q 1 --seed 7",
        {"U.csv", "sigma.csv", "V.csv"});
  check("image", "image --in " + (fixture_dir / "img.pgm").string() +
                     " --alg basic --k 4,8 --p 2 --seed 5",
        {"errors.csv"});
  check("bounds",
        "bounds --alg basic --k 6 --p 4 --m 200 --n 60 --r 5 --gap 4 --density 0.1"
        " --trials 3 --seed 11",
        {"bounds.csv"});
  check("angles",
        "angles --alg power --m 200 --n 60 --r 5 --gap 4 --density 0.1 --k 8 --p 4"
        " --q 0,1 --trials 2 --seed 5",
        {"angles.csv"});
  check("gen-testmat", "gen-testmat --m 120 --n 40 --r 6 --gap 3 --density 0.1 --seed 9",
        {"testmat.mtx"});

  report(10, "reproducibility", pass,
         pass ? "five subcommands, numeric lines identical" : detail.str());
}
