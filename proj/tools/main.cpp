// Command-line front end: svd, image, bounds, angles, gen-testmat.
#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "rsvd/drivers.hpp"
#include "rsvd/version.hpp"

namespace {

constexpr const char* kAlgChoices = "basic|power|ortho|sp-hermitian|sp-general";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized low-rank factorization toolkit"};
  app.set_version_flag("--version", std::string(rsvd::kVersion));
  app.require_subcommand(1);

  // svd ----------------------------------------------------------------
  rsvd::SvdOptions svd_opt;
  auto* svd = app.add_subcommand("svd", "Factor one matrix, write U/sigma/V as CSV");
  svd->add_option("--in", svd_opt.in, "input matrix (csv, mm/mtx, or pgm)")->required();
  svd->add_option("--out-dir", svd_opt.out_dir, "output directory");
  svd->add_option("--alg", svd_opt.alg, kAlgChoices);
  svd->add_option("--k", svd_opt.k, "target rank")->required();
  svd->add_option("--p", svd_opt.p, "oversampling");
  svd->add_option("--q", svd_opt.q, "power-iteration steps");
  svd->add_option("--seed", svd_opt.seed, "random seed");
  svd->add_option("--format", svd_opt.format, "input format: auto|csv|mm|pgm");

  // image --------------------------------------------------------------
  rsvd::ImageOptions img_opt;
  auto* image = app.add_subcommand("image", "Rank-k reconstructions of a PGM image");
  image->add_option("--in", img_opt.in, "input PGM image")->required();
  image->add_option("--out-dir", img_opt.out_dir, "output directory");
  image->add_option("--alg", img_opt.alg, kAlgChoices);
  image->add_option("--k", img_opt.k_list, "target ranks (one PGM each)")
      ->required()
      ->delimiter(',');
  image->add_option("--p", img_opt.p, "oversampling");
  image->add_option("--q", img_opt.q, "power-iteration steps");
  image->add_option("--seed", img_opt.seed, "random seed");

  // bounds -------------------------------------------------------------
  rsvd::BoundsOptions bounds_opt;
  auto* bounds = app.add_subcommand(
      "bounds", "Computed Stage-1 error vs theorem bound on a controlled-gap matrix");
  bounds->add_option("--out-dir", bounds_opt.out_dir, "output directory");
  bounds->add_option("--alg", bounds_opt.alg, "basic|power|ortho");
  bounds->add_option("--sweep", bounds_opt.sweep, "sweep variable: none|k|p|q");
  bounds->add_option("--values", bounds_opt.values, "swept values")->delimiter(',');
  bounds->add_option("--k", bounds_opt.k, "target rank");
  bounds->add_option("--p", bounds_opt.p, "oversampling");
  bounds->add_option("--q", bounds_opt.q, "power-iteration steps");
  bounds->add_option("--m", bounds_opt.m, "test-matrix rows");
  bounds->add_option("--n", bounds_opt.n, "test-matrix cols");
  bounds->add_option("--r", bounds_opt.r, "gap location");
  bounds->add_option("--gap", bounds_opt.gap, "gap multiplier");
  bounds->add_option("--density", bounds_opt.density, "test-vector fill fraction");
  bounds->add_option("--trials", bounds_opt.trials, "trials per sweep point");
  bounds->add_option("--seed", bounds_opt.seed, "base seed (trial t uses seed+t)");

  // angles -------------------------------------------------------------
  rsvd::AnglesOptions angles_opt;
  auto* angles = app.add_subcommand(
      "angles", "Canonical sines vs per-draw bounds on a controlled-gap matrix");
  angles->add_option("--out-dir", angles_opt.out_dir, "output directory");
  angles->add_option("--alg", angles_opt.alg, "basic|power|ortho");
  angles->add_option("--m", angles_opt.m, "test-matrix rows");
  angles->add_option("--n", angles_opt.n, "test-matrix cols");
  angles->add_option("--r", angles_opt.r, "gap location");
  angles->add_option("--gap", angles_opt.gap, "gap multiplier");
  angles->add_option("--density", angles_opt.density, "test-vector fill fraction");
  angles->add_option("--k", angles_opt.k, "target rank");
  angles->add_option("--p", angles_opt.p, "oversampling");
  angles->add_option("--q", angles_opt.q_list, "power-step values")->delimiter(',');
  angles->add_option("--trials", angles_opt.trials, "trials per q");
  angles->add_option("--seed", angles_opt.seed, "base seed (trial t uses seed+t)");

  // gen-testmat ----------------------------------------------------------
  rsvd::GenTestmatOptions gen_opt;
  auto* gen = app.add_subcommand("gen-testmat", "Emit a controlled-gap test matrix");
  gen->add_option("--out-dir", gen_opt.out_dir, "output directory");
  gen->add_option("--m", gen_opt.m, "rows");
  gen->add_option("--n", gen_opt.n, "cols");
  gen->add_option("--r", gen_opt.r, "gap location");
  gen->add_option("--gap", gen_opt.gap, "gap multiplier");
  gen->add_option("--density", gen_opt.density, "fill fraction");
  gen->add_option("--seed", gen_opt.seed, "random seed");
  gen->add_option("--format", gen_opt.format, "mm (coordinate) | csv (dense)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << rsvd::kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (svd->parsed()) return rsvd::run_svd(svd_opt);
  if (image->parsed()) return rsvd::run_image(img_opt);
  if (bounds->parsed()) return rsvd::run_bounds(bounds_opt);
  if (angles->parsed()) return rsvd::run_angles(angles_opt);
  if (gen->parsed()) return rsvd::run_gen_testmat(gen_opt);
  return 2;
}
