// Experiment drivers behind the CLI subcommands.  Each run_* function does
// the whole job for one invocation and returns a process exit code:
//   0 ok, 2 bad arguments/parameters, 3 I/O failure, 4 numerical failure.
#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsvd/angles.hpp"
#include "rsvd/bounds.hpp"
#include "rsvd/factor.hpp"
#include "rsvd/io.hpp"
#include "rsvd/singlepass.hpp"
#include "rsvd/testmats.hpp"

namespace rsvd {

enum class Algorithm { basic, power, ortho, sp_hermitian, sp_general };

inline std::string_view to_string(Algorithm alg) {
  switch (alg) {
    case Algorithm::basic: return "basic";
    case Algorithm::power: return "power";
    case Algorithm::ortho: return "ortho";
    case Algorithm::sp_hermitian: return "sp-hermitian";
    case Algorithm::sp_general: return "sp-general";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
  if (name == "basic") return Algorithm::basic;
  if (name == "power") return Algorithm::power;
  if (name == "ortho") return Algorithm::ortho;
  if (name == "sp-hermitian") return Algorithm::sp_hermitian;
  if (name == "sp-general") return Algorithm::sp_general;
  throw ParameterError("unknown algorithm '" + name + "'");
}

inline RangeMode range_mode_of(Algorithm alg) {
  switch (alg) {
    case Algorithm::basic: return RangeMode::basic;
    case Algorithm::power: return RangeMode::power;
    case Algorithm::ortho: return RangeMode::power_ortho;
    default: throw ParameterError("algorithm has no Stage-1 range mode");
  }
}

namespace detail {

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParameterError*>(&e)) return 2;
  if (dynamic_cast<const DimensionError*>(&e)) return 2;
  if (dynamic_cast<const IoError*>(&e)) return 3;
  return 4;
}

template <typename Fn>
int run_command(Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

inline MatrixFormat parse_input_format(const std::string& format,
                                       const std::filesystem::path& in) {
  std::string f = format;
  if (f == "auto" || f.empty()) {
    const std::string ext = in.extension().string();
    if (ext == ".mm" || ext == ".mtx") {
      f = "mm";
    } else if (ext == ".pgm") {
      f = "pgm";
    } else {
      f = "csv";
    }
  }
  if (f == "csv" || f == "mm" || f == "pgm") {
    if (f == "pgm") throw ParameterError("pgm handled separately");
    return f == "csv" ? MatrixFormat::csv : MatrixFormat::matrix_market;
  }
  throw ParameterError("unknown format '" + format + "'");
}

inline DenseMatrix load_input(const std::filesystem::path& in, const std::string& format) {
  std::string f = format;
  if (f == "auto" || f.empty()) {
    f = in.extension() == ".pgm" ? "pgm" : "other";
  }
  if (f == "pgm") return read_pgm(in);
  return read_matrix(in, parse_input_format(format, in));
}

inline std::string fmt(double v) { return detail::format_double(v); }

}  // namespace detail

// ---------------------------------------------------------------------------
// svd: factor one matrix, write U/sigma/V (or U/lambda) as CSV

struct SvdOptions {
  std::filesystem::path in;
  std::filesystem::path out_dir = ".";
  std::string alg = "basic";
  Index k = 0;
  Index p = 0;
  int q = 0;
  std::uint64_t seed = 0;
  std::string format = "auto";
};

inline int run_svd(const SvdOptions& opt) {
  return detail::run_command([&] {
    const Algorithm alg = parse_algorithm(opt.alg);
    const DenseMatrix a = detail::load_input(opt.in, opt.format);
    Rng rng(opt.seed);

    DenseMatrix recon;
    std::optional<SvdApprox> svd_result;
    std::optional<EvdApprox> evd_result;
    switch (alg) {
      case Algorithm::basic:
      case Algorithm::power:
      case Algorithm::ortho: {
        const SketchConfig cfg{opt.k, opt.p, opt.q, range_mode_of(alg), opt.seed};
        svd_result = rsvd(a, cfg, rng);
        break;
      }
      case Algorithm::sp_hermitian:
        evd_result = spevd_hermitian(a, opt.k, opt.p, rng);
        break;
      case Algorithm::sp_general:
        svd_result = spsvd_general(a, opt.k, opt.p, rng);
        break;
    }
    recon = svd_result ? svd_result->reconstruct() : evd_result->reconstruct();

    const double fro = a.norm();
    const double rel_fro = (a - recon).norm() / (fro > 0.0 ? fro : 1.0);
    const Vector resid_sv = singular_values(a - recon);
    const Vector a_sv = singular_values(a);
    const double rel_spec = resid_sv(0) / (a_sv(0) > 0.0 ? a_sv(0) : 1.0);

    RunManifest manifest;
    manifest.command = "svd";
    manifest.params = {{"in", opt.in.string()},
                       {"alg", std::string(to_string(alg))},
                       {"k", std::to_string(opt.k)},
                       {"p", std::to_string(opt.p)},
                       {"q", std::to_string(opt.q)},
                       {"seed", std::to_string(opt.seed)},
                       {"rel_frobenius_error", detail::fmt(rel_fro)},
                       {"rel_spectral_error", detail::fmt(rel_spec)}};
    const std::string comments = manifest.comment_block();

    namespace fs = std::filesystem;
    if (evd_result) {
      write_matrix_csv(evd_result->U, fs::path(opt.out_dir) / "U.csv", comments);
      write_matrix_csv(evd_result->lambda, fs::path(opt.out_dir) / "lambda.csv", comments);
    } else {
      write_matrix_csv(svd_result->U, fs::path(opt.out_dir) / "U.csv", comments);
      write_matrix_csv(svd_result->sigma, fs::path(opt.out_dir) / "sigma.csv", comments);
      write_matrix_csv(svd_result->V, fs::path(opt.out_dir) / "V.csv", comments);
    }
  });
}

// ---------------------------------------------------------------------------
// image: rank-k reconstructions of a grayscale image for a list of k

struct ImageOptions {
  std::filesystem::path in;
  std::filesystem::path out_dir = ".";
  std::string alg = "basic";
  std::vector<Index> k_list;
  Index p = 0;
  int q = 0;
  std::uint64_t seed = 0;
};

inline int run_image(const ImageOptions& opt) {
  return detail::run_command([&] {
    const Algorithm alg = parse_algorithm(opt.alg);
    if (opt.k_list.empty()) throw ParameterError("image: need at least one k");
    const DenseMatrix a = read_pgm(opt.in);
    const double fro = a.norm();

    RunManifest manifest;
    manifest.command = "image";
    std::string klist;
    for (std::size_t i = 0; i < opt.k_list.size(); ++i) {
      klist += (i ? "," : "") + std::to_string(opt.k_list[i]);
    }
    manifest.params = {{"in", opt.in.string()},
                       {"alg", std::string(to_string(alg))},
                       {"k", klist},
                       {"p", std::to_string(opt.p)},
                       {"q", std::to_string(opt.q)},
                       {"seed", std::to_string(opt.seed)}};
    const std::string comments = manifest.comment_block();

    std::ostringstream csv;
    csv << comments;
    csv << "k,p,q,alg,rel_frobenius_error,spectral_error\n";
    namespace fs = std::filesystem;
    for (const Index k : opt.k_list) {
      Rng rng(opt.seed);  // fresh stream per k; reproducible per (seed, k)
      DenseMatrix recon;
      if (alg == Algorithm::sp_hermitian) {
        recon = spevd_hermitian(a, k, opt.p, rng).reconstruct();
      } else if (alg == Algorithm::sp_general) {
        recon = spsvd_general(a, k, opt.p, rng).reconstruct();
      } else {
        const SketchConfig cfg{k, opt.p, opt.q, range_mode_of(alg), opt.seed};
        recon = truncate(rsvd(a, cfg, rng), k).reconstruct();
      }
      const double rel_fro = (a - recon).norm() / (fro > 0.0 ? fro : 1.0);
      // Dense route on purpose: image residuals have nearly flat spectra,
      // the worst case for power iteration.
      const double spec = singular_values(a - recon)(0);
      csv << k << ',' << opt.p << ',' << opt.q << ',' << to_string(alg) << ','
          << detail::fmt(rel_fro) << ',' << detail::fmt(spec) << '\n';
      write_pgm(recon, fs::path(opt.out_dir) / ("recon_k" + std::to_string(k) + ".pgm"),
                comments);
    }
    detail::write_file_atomic(fs::path(opt.out_dir) / "errors.csv", csv.str(), false);
  });
}

// ---------------------------------------------------------------------------
// bounds: computed Stage-1 error vs the theorem bound over a sweep

struct BoundsOptions {
  std::filesystem::path out_dir = ".";
  std::string alg = "basic";
  std::string sweep = "none";   // none | k | p | q
  std::vector<Index> values;    // swept values; ignored for sweep == none
  Index k = 20;
  Index p = 5;
  int q = 1;
  Index m = 3000;
  Index n = 300;
  Index r = 15;
  double gap = 10.0;
  double density = 0.025;
  int trials = 20;
  std::uint64_t seed = 0;
};

namespace detail {

inline double estimated_bound_for(Algorithm alg, Index k, Index p, int q, Index m,
                                  Index n, const Vector& sigmas) {
  switch (alg) {
    case Algorithm::basic: return bound_basic(k, p, m, n, sigmas(k));
    case Algorithm::power: return bound_power(k, p, q, m, n, sigmas(k));
    case Algorithm::ortho: return bound_ortho(k, p, q, sigmas, m, n, false);
    default: throw ParameterError("bounds: alg must be basic, power, or ortho");
  }
}

}  // namespace detail

inline int run_bounds(const BoundsOptions& opt) {
  return detail::run_command([&] {
    const Algorithm alg = parse_algorithm(opt.alg);
    if (alg != Algorithm::basic && alg != Algorithm::power && alg != Algorithm::ortho) {
      throw ParameterError("bounds: alg must be basic, power, or ortho");
    }
    if (opt.sweep != "none" && opt.sweep != "k" && opt.sweep != "p" && opt.sweep != "q") {
      throw ParameterError("bounds: sweep must be none, k, p, or q");
    }
    if (opt.sweep != "none" && opt.values.empty()) {
      throw ParameterError("bounds: sweep requested but no values given");
    }
    if (opt.trials < 1) throw ParameterError("bounds: trials must be >= 1");

    GapSpec spec{opt.m, opt.n, opt.r, opt.gap, opt.density, opt.seed};
    spec.validate();

    // Parameter points, each (k, p, q).
    std::vector<std::array<Index, 3>> points;
    if (opt.sweep == "none") {
      points.push_back({opt.k, opt.p, opt.q});
    } else {
      for (const Index v : opt.values) {
        if (opt.sweep == "k") points.push_back({v, opt.p, opt.q});
        if (opt.sweep == "p") points.push_back({opt.k, v, opt.q});
        if (opt.sweep == "q") points.push_back({opt.k, opt.p, v});
      }
    }

    const DenseMatrix a = to_dense(controlled_gap(spec));
    const Vector sigmas = singular_values(a);

    // Validate every point before running anything (usage errors exit early).
    for (const auto& [k, p, q] : points) {
      detail::estimated_bound_for(alg, k, p, static_cast<int>(q), opt.m, opt.n, sigmas);
    }

    RunManifest manifest;
    manifest.command = "bounds";
    manifest.params = {{"alg", std::string(to_string(alg))},
                       {"sweep", opt.sweep},
                       {"k", std::to_string(opt.k)},
                       {"p", std::to_string(opt.p)},
                       {"q", std::to_string(opt.q)},
                       {"m", std::to_string(opt.m)},
                       {"n", std::to_string(opt.n)},
                       {"r", std::to_string(opt.r)},
                       {"gap", detail::fmt(opt.gap)},
                       {"density", detail::fmt(opt.density)},
                       {"trials", std::to_string(opt.trials)},
                       {"seed", std::to_string(opt.seed)}};
    if (opt.sweep != "none") {
      std::string vals;
      for (std::size_t i = 0; i < opt.values.size(); ++i) {
        vals += (i ? "," : "") + std::to_string(opt.values[i]);
      }
      manifest.params.emplace_back("values", vals);
    }

    std::ostringstream csv;
    csv << manifest.comment_block();
    csv << "trial,seed,k,p,q,alg,computed_error,estimated_bound,sigma_k1\n";
    for (const auto& [k, p, q] : points) {
      const int qi = static_cast<int>(q);
      const double bound = detail::estimated_bound_for(alg, k, p, qi, opt.m, opt.n, sigmas);
      for (int t = 0; t < opt.trials; ++t) {
        const std::uint64_t trial_seed = opt.seed + static_cast<std::uint64_t>(t);
        Rng rng(trial_seed);
        const auto t0 = std::chrono::steady_clock::now();
        const SketchConfig cfg{k, p, qi, range_mode_of(alg), trial_seed};
        const DenseMatrix qbasis = range_basis(a, cfg, rng);
        const double err = computed_range_error(a, qbasis);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        BoundReport report{t,   trial_seed, k,     p,          qi,
                           cfg.mode, err,  bound, sigmas(k)};
        report.wall_time = dt.count();
        csv << report.trial << ',' << report.seed << ',' << report.k << ','
            << report.p << ',' << report.q << ',' << to_string(alg) << ','
            << detail::fmt(report.computed_error) << ','
            << detail::fmt(report.estimated_bound) << ','
            << detail::fmt(report.sigma_k1) << '\n';
      }
    }
    detail::write_file_atomic(std::filesystem::path(opt.out_dir) / "bounds.csv",
                              csv.str(), false);
  });
}

// ---------------------------------------------------------------------------
// angles: computed canonical sines vs the per-draw bounds over a q-list

struct AnglesOptions {
  std::filesystem::path out_dir = ".";
  std::string alg = "power";
  Index m = 3000;
  Index n = 300;
  Index r = 15;
  double gap = 2.0;
  double density = 0.025;
  Index k = 25;
  Index p = 5;
  std::vector<int> q_list = {0, 1, 2};
  int trials = 30;
  std::uint64_t seed = 0;
};

inline int run_angles(const AnglesOptions& opt) {
  return detail::run_command([&] {
    const Algorithm alg = parse_algorithm(opt.alg);
    const RangeMode mode = range_mode_of(alg);  // rejects single-pass algs
    if (opt.trials < 1) throw ParameterError("angles: trials must be >= 1");
    GapSpec spec{opt.m, opt.n, opt.r, opt.gap, opt.density, opt.seed};
    spec.validate();

    const DenseMatrix a = to_dense(controlled_gap(spec));
    const SvdApprox oracle = svd_small(a);
    const DenseMatrix u_k = oracle.U.leftCols(opt.k);
    const DenseMatrix v_k = oracle.V.leftCols(opt.k);

    RunManifest manifest;
    manifest.command = "angles";
    std::string qlist;
    for (std::size_t i = 0; i < opt.q_list.size(); ++i) {
      qlist += (i ? "," : "") + std::to_string(opt.q_list[i]);
    }
    manifest.params = {{"alg", std::string(to_string(alg))},
                       {"m", std::to_string(opt.m)},
                       {"n", std::to_string(opt.n)},
                       {"r", std::to_string(opt.r)},
                       {"gap", detail::fmt(opt.gap)},
                       {"density", detail::fmt(opt.density)},
                       {"k", std::to_string(opt.k)},
                       {"p", std::to_string(opt.p)},
                       {"q", qlist},
                       {"trials", std::to_string(opt.trials)},
                       {"seed", std::to_string(opt.seed)}};

    std::ostringstream csv;
    csv << manifest.comment_block();
    csv << "seed,q,j,sin_theta,sin_nu,bound_theta,bound_nu\n";
    for (const int q : opt.q_list) {
      for (int t = 0; t < opt.trials; ++t) {
        const std::uint64_t trial_seed = opt.seed + static_cast<std::uint64_t>(t);
        Rng rng(trial_seed);
        const SketchConfig cfg{opt.k, opt.p, q, mode, trial_seed};
        const SvdApprox result = rsvd(a, cfg, rng);
        // Theorem 5 compares U_k against the full (k+p)-wide computed basis.
        const Vector sin_theta = canonical_sines(result.U, u_k);
        const Vector sin_nu = canonical_sines(result.V, v_k);
        // The same draw the algorithm consumed, reproduced from the seed.
        Rng redraw(trial_seed);
        const DenseMatrix omega = gaussian(opt.n, opt.k + opt.p, redraw);
        const AngleBounds bounds = angle_bounds(oracle.V, omega, oracle.sigma, opt.k, q);
        for (Index j = 0; j < opt.k; ++j) {
          csv << trial_seed << ',' << q << ',' << (j + 1) << ','
              << detail::fmt(sin_theta(j)) << ',' << detail::fmt(sin_nu(j)) << ','
              << detail::fmt(bounds.sin_theta(j)) << ','
              << detail::fmt(bounds.sin_nu(j)) << '\n';
        }
      }
    }
    detail::write_file_atomic(std::filesystem::path(opt.out_dir) / "angles.csv",
                              csv.str(), false);
  });
}

// ---------------------------------------------------------------------------
// gen-testmat: emit the controlled-gap matrix

struct GenTestmatOptions {
  std::filesystem::path out_dir = ".";
  Index m = 3000;
  Index n = 300;
  Index r = 15;
  double gap = 10.0;
  double density = 0.025;
  std::uint64_t seed = 0;
  std::string format = "mm";  // mm (coordinate) | csv (dense)
};

inline int run_gen_testmat(const GenTestmatOptions& opt) {
  return detail::run_command([&] {
    if (opt.format != "mm" && opt.format != "csv") {
      throw ParameterError("gen-testmat: format must be mm or csv");
    }
    GapSpec spec{opt.m, opt.n, opt.r, opt.gap, opt.density, opt.seed};
    spec.validate();
    const SparseTriplets triplets = controlled_gap(spec);

    RunManifest manifest;
    manifest.command = "gen-testmat";
    manifest.params = {{"m", std::to_string(opt.m)},
                       {"n", std::to_string(opt.n)},
                       {"r", std::to_string(opt.r)},
                       {"gap", detail::fmt(opt.gap)},
                       {"density", detail::fmt(opt.density)},
                       {"seed", std::to_string(opt.seed)}};

    namespace fs = std::filesystem;
    if (opt.format == "mm") {
      write_triplets_mm(triplets, fs::path(opt.out_dir) / "testmat.mtx",
                        manifest.comment_block('%'));
    } else {
      write_matrix_csv(to_dense(triplets), fs::path(opt.out_dir) / "testmat.csv",
                       manifest.comment_block());
    }
  });
}

}  // namespace rsvd
