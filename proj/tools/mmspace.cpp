// Command-line front end for the mmspace solvers.
//
// Exit status: 0 on success, 1 on domain errors (invalid input, guard
// exceeded, failed certificate), 2 on usage errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mmspace/box.hpp"
#include "mmspace/comb.hpp"
#include "mmspace/errors.hpp"
#include "mmspace/gh.hpp"
#include "mmspace/io.hpp"
#include "mmspace/moduli.hpp"
#include "mmspace/transport.hpp"

namespace {

using namespace mmspace;

constexpr int kDomainError = 1;

struct Globals {
  bool exact = false;
  int precision = 12;
  int threads = 0;
  std::optional<std::size_t> guard_n;

  NumberFormat format() const { return {exact, precision}; }

  GhOptions gh() const {
    GhOptions o;
    o.threads = threads;
    if (guard_n) o.max_points = *guard_n;
    return o;
  }
  BoxOptions box() const {
    BoxOptions o;
    o.threads = threads;
    if (guard_n) o.max_cells = *guard_n * *guard_n;
    return o;
  }
  CanonicalOptions canonical() const {
    CanonicalOptions o;
    o.threads = threads;
    if (guard_n) o.max_points = *guard_n;
    return o;
  }
};

void print_relation(const Relation& R, const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  for (auto [x, y] : R) std::cout << "  " << X.labels()[x] << " " << Y.labels()[y] << "\n";
}

ToothSampling parse_sampling(const std::string& name) {
  return name == "endpoint" ? ToothSampling::RightEndpoint : ToothSampling::Midpoint;
}

CombParams comb_params(const std::string& csv, std::optional<std::size_t> depth, std::size_t mesh,
                       const std::string& sampling, const char* what) {
  CombParams p{parse_number_list(csv), mesh, parse_sampling(sampling)};
  if (depth && *depth != p.depth())
    throw InvalidInput(std::string("--depth ") + std::to_string(*depth) + " does not match the " +
                       std::to_string(p.depth()) + " coordinates given to " + what);
  return p;
}

int cmd_validate(const std::string& path) {
  const SpaceFile file = read_space_file(path);
  const auto violations = validate(file.data);
  if (violations.empty()) {
    std::cout << "valid: " << file.data.labels.size() << " points"
              << (file.data.mass ? ", with mass" : "") << "\n";
    return 0;
  }
  std::cout << "invalid: " << violations.size() << " violation(s)\n";
  for (const auto& v : violations) std::cout << "  " << v.describe() << "\n";
  return kDomainError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact distances between finite metric (measure) spaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--exact", g.exact, "Print exact fractions instead of decimals");
  app.add_option("--precision", g.precision, "Significant digits of decimal output")
      ->envname("MMSPACE_PRECISION")
      ->check(CLI::Range(1, 1000));
  app.add_option("--threads", g.threads, "Worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--guard-n", g.guard_n,
                 "Size guard: points per side for gh and canonicalize, N*N cells for box")
      ->check(CLI::PositiveNumber);

  std::string file_a, file_b, file_z, out_path;
  bool witness = false;

  auto* validate_cmd = app.add_subcommand("validate", "Report every violated space invariant");
  validate_cmd->add_option("file", file_a)->required();

  auto* sep_cmd = app.add_subcommand("sep", "Separation: least distance between distinct points");
  sep_cmd->add_option("file", file_a)->required();

  auto* gh_cmd = app.add_subcommand("gh", "Exact Gromov-Hausdorff distance");
  gh_cmd->add_option("X", file_a)->required();
  gh_cmd->add_option("Y", file_b)->required();
  gh_cmd->add_flag("--witness", witness, "Also print a minimizing correspondence");

  std::string certificate_path;
  auto* box_cmd = app.add_subcommand("box", "Exact box distance between mm-spaces");
  box_cmd->add_option("X", file_a)->required();
  box_cmd->add_option("Y", file_b)->required();
  box_cmd->add_flag("--witness", witness, "Also print the (pi, S) certificate");
  box_cmd->add_option("-o,--output", out_path, "Write the certificate to this file");
  box_cmd->add_option("--check-certificate", certificate_path, "Verify a certificate instead of solving")
      ->excludes("--witness")
      ->excludes("--output");

  std::string relation_text;
  auto* dis_cmd = app.add_subcommand("dis", "Distortion of a relation");
  dis_cmd->add_option("X", file_a)->required();
  dis_cmd->add_option("Y", file_b)->required();
  dis_cmd->add_option("--relation", relation_text, "Index pairs, e.g. \"0 0; 1 1\"")->required();

  std::string mu_text, nu_text;
  auto* prok_cmd = app.add_subcommand("prokhorov", "Prokhorov distance of two measures on one space");
  prok_cmd->add_option("Z", file_z)->required();
  prok_cmd->add_option("--mu", mu_text, "Comma-separated masses")->required();
  prok_cmd->add_option("--nu", nu_text, "Comma-separated masses")->required();

  auto* canon_cmd = app.add_subcommand("canonicalize", "Relabel into the canonical form");
  canon_cmd->add_option("file", file_a)->required();

  auto* lift_cmd = app.add_subcommand("lift", "Attach the uniform measure");
  lift_cmd->add_option("file", file_a)->required();
  lift_cmd->add_option("-o,--output", out_path, "Write here instead of stdout");

  auto* comb_cmd = app.add_subcommand("comb", "Discretized comb spaces");
  comb_cmd->require_subcommand(1);
  std::string t_csv, s_csv, sampling = "midpoint", out_x, out_y;
  std::optional<std::size_t> depth;
  std::size_t mesh = 1;
  std::optional<std::string> epsilon_text;
  const std::vector<std::string> samplings{"midpoint", "endpoint"};

  auto* build_cmd = comb_cmd->add_subcommand("build", "Write a comb discretization as a space file");
  build_cmd->add_option("--t", t_csv, "Tooth coordinates in [0,1], comma-separated")->required();
  build_cmd->add_option("--depth", depth, "Number of teeth (must match --t)");
  build_cmd->add_option("--mesh", mesh, "Samples per tooth")->check(CLI::PositiveNumber);
  build_cmd->add_option("--sampling", sampling)->check(CLI::IsMember(samplings));
  build_cmd->add_option("-o,--output", out_path, "Output space file")->required();

  auto* cw_cmd = comb_cmd->add_subcommand("witness", "Write the block-matching certificate between two combs");
  cw_cmd->add_option("--s", s_csv, "Source coordinates")->required();
  cw_cmd->add_option("--t", t_csv, "Target coordinates")->required();
  cw_cmd->add_option("--depth", depth, "Number of teeth (must match --s and --t)");
  cw_cmd->add_option("--mesh", mesh, "Samples per tooth")->check(CLI::PositiveNumber);
  cw_cmd->add_option("--sampling", sampling)->check(CLI::IsMember(samplings));
  cw_cmd->add_option("--epsilon", epsilon_text, "Target bound; refused when the mesh or depth is too coarse");
  cw_cmd->add_option("-o,--output", out_path, "Output certificate file")->required();
  cw_cmd->add_option("--out-x", out_x, "Also write the source comb");
  cw_cmd->add_option("--out-y", out_y, "Also write the target comb");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const NumberFormat fmt = g.format();
  try {
    if (*validate_cmd) return cmd_validate(file_a);

    if (*sep_cmd) {
      const auto X = to_metric_space(read_space_file(file_a).data);
      std::cout << to_string(separation(X), fmt) << "\n";
      return 0;
    }

    if (*gh_cmd) {
      const auto X = to_metric_space(read_space_file(file_a).data);
      const auto Y = to_metric_space(read_space_file(file_b).data);
      const GhResult r = gh_exact(X, Y, g.gh());
      std::cout << fmt(r.distance) << "\n";
      if (witness) {
        std::cout << "correspondence:\n";
        print_relation(r.witness, X, Y);
      }
      return 0;
    }

    if (*box_cmd) {
      const auto X = to_mm_space(read_space_file(file_a).data);
      const auto Y = to_mm_space(read_space_file(file_b).data);
      if (!certificate_path.empty()) {
        const Certificate cert = read_certificate_file(certificate_path);
        const CertificateCheck c = check_certificate(cert, X, Y);
        std::cout << "coupling: " << (c.coupling_valid ? "valid" : "invalid") << "\n"
                  << "recomputed: " << fmt(c.recomputed) << "\n"
                  << "claimed: " << fmt(cert.claimed_value) << "\n"
                  << (c.holds ? "certificate holds" : "certificate fails") << "\n";
        return c.holds ? 0 : kDomainError;
      }
      const BoxResult r = box_exact(X, Y, g.box());
      std::cout << fmt(r.value) << "\n";
      const Certificate cert{r.coupling, r.relation, r.value, std::nullopt};
      if (witness) std::cout << format_certificate(cert);
      if (!out_path.empty()) write_text_file(out_path, format_certificate(cert));
      return 0;
    }

    if (*dis_cmd) {
      const auto X = to_metric_space(read_space_file(file_a).data);
      const auto Y = to_metric_space(read_space_file(file_b).data);
      const Relation R = parse_relation(relation_text);
      std::cout << fmt(distortion(R, X, Y)) << "\n";
      return 0;
    }

    if (*prok_cmd) {
      const auto Z = to_metric_space(read_space_file(file_z).data);
      const auto mu = parse_number_list(mu_text);
      const auto nu = parse_number_list(nu_text);
      std::cout << fmt(prokhorov(mu, nu, Z)) << "\n";
      return 0;
    }

    if (*canon_cmd) {
      const SpaceFile file = read_space_file(file_a);
      std::cout << "# sigma:";
      if (file.data.mass) {
        const auto X = to_mm_space(file.data);
        const CanonicalForm c = canonical_form(metric_vector_of(X.space()), weight_vector_of(X), g.canonical());
        for (auto v : c.sigma) std::cout << " " << v;
        std::cout << "\n" << format_space({to_space_data(relabel(X, c.sigma)), std::nullopt});
      } else {
        const auto X = to_metric_space(file.data);
        const CanonicalForm c = canonical_form(metric_vector_of(X), g.canonical());
        for (auto v : c.sigma) std::cout << " " << v;
        std::cout << "\n" << format_space({to_space_data(relabel(X, c.sigma)), std::nullopt});
      }
      return 0;
    }

    if (*lift_cmd) {
      const auto X = to_metric_space(read_space_file(file_a).data);
      const std::string text = format_space({to_space_data(uniform_lift(X)), std::nullopt});
      if (out_path.empty())
        std::cout << text;
      else
        write_text_file(out_path, text);
      return 0;
    }

    if (*build_cmd) {
      const CombSpace c = build_comb(comb_params(t_csv, depth, mesh, sampling, "--t"));
      write_text_file(out_path, format_space({to_space_data(c.space), c.coords}));
      std::cout << "wrote " << c.space.size() << " points to " << out_path << "\n";
      return 0;
    }

    if (*cw_cmd) {
      const CombParams source = comb_params(s_csv, depth, mesh, sampling, "--s");
      const CombParams target = comb_params(t_csv, depth, mesh, sampling, "--t");
      std::optional<Rational> requested;
      if (epsilon_text) requested = parse_rational(*epsilon_text);
      const CombWitness w = comb_witness(source, target, requested);
      write_text_file(out_path, format_certificate(w.certificate()));
      if (!out_x.empty()) write_text_file(out_x, format_space({to_space_data(w.source.space), w.source.coords}));
      if (!out_y.empty()) write_text_file(out_y, format_space({to_space_data(w.target.space), w.target.coords}));
      std::cout << "pi(S): " << fmt(w.covered_mass()) << "\n"
                << "dis S: " << fmt(w.distortion) << "\n"
                << "epsilon: " << fmt(w.epsilon) << "\n"
                << "claimed: " << fmt(w.objective()) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return 2;
}
