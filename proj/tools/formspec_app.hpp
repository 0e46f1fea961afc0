#pragma once

#include "formspec/formspec.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace formspec::app {

enum ExitCode { kOk = 0, kUnknownStrict = 2, kInputError = 3, kResourceError = 4 };

struct JobSpec {
  std::string command;
  std::string input;
  std::string output;     // empty: stdout
  std::string plot_output;
  double alpha = 1.0;
  double lambda_max = 2.0 * kTwoPi * kTwoPi;
  std::string grid;       // command-specific, see --help
  std::vector<double> lambdas;
  std::vector<int> degrees;
  bool betti = false;
  bool strict = false;
  int m = 1;
  int n = 4;
  std::string psi;
  double inner_radius = -1.0;
  double r_prime = 25.0;
  std::vector<double> radii;
};

inline std::vector<double> parse_reals(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(flag + ": '" + item + "' is not a number");
    }
  }
  return out;
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

inline int run_flat(const JobSpec& job, std::ostream& out) {
  const FlatManifold k = load_flat_manifold(job.input);
  if (job.betti) {
    write_output(job.output, betti_csv(betti_numbers(k)), out);
    return kOk;
  }
  if (!(job.lambda_max >= 0.0)) throw InputError("--lambda-max must be nonnegative");
  auto tables = form_spectra(k, job.lambda_max);
  if (!job.degrees.empty()) {
    std::vector<SpectrumTable> picked;
    for (int l : job.degrees) {
      if (l < 0 || l > k.dimension()) throw InputError("--degree " + std::to_string(l) + " out of range");
      picked.push_back(tables[static_cast<std::size_t>(l)]);
    }
    tables = std::move(picked);
  }
  write_output(job.output, spectra_csv(tables), out);
  return kOk;
}

inline int run_alpha(const JobSpec& job, std::ostream& out) {
  const FlatManifold k = load_flat_manifold(job.input);
  if (k.dimension() != job.n - job.m)
    throw InputError("--n minus --m must equal the manifold dimension " + std::to_string(k.dimension()));
  write_output(job.output, alpha_csv(alpha_table(k, job.m, job.n)), out);
  return kOk;
}

inline int run_warped(const JobSpec& job, std::ostream& out) {
  const WarpedModel model = load_warped_model(job.input);
  const auto reports = classify_all(model);
  write_output(job.output, classification_csv(reports), out);
  if (!job.plot_output.empty()) {
    ChannelGrid grid;
    if (!job.grid.empty()) {
      const auto g = parse_reals(job.grid, "--grid");
      if (g.size() != 3) throw InputError("--grid: expected r_min,r_max,h");
      grid.r_min = g[0];
      grid.r_max = g[1];
      grid.spacing = g[2];
    } else {
      for (const auto& f : model.factors) grid.r_min = std::max(grid.r_min, f.warp.formula_start());
      grid.r_max = grid.r_min + 20.0;
      grid.spacing = 0.1;
    }
    grid.spectral_cutoff = job.lambda_max;
    std::vector<ChannelOperator> channels;
    for (int k = 0; k <= model.total_dimension(); ++k)
      for (auto& c : channel_operators(model, k, grid)) channels.push_back(std::move(c));
    write_output(job.plot_output, emit_plot_data(channels), out);
  }
  const bool unknown = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.verdict.is_unknown(); });
  return job.strict && unknown ? kUnknownStrict : kOk;
}

inline int run_certify(const JobSpec& job, std::ostream& out) {
  if (job.lambdas.empty()) throw InputError("--lambda is required");
  for (double l : job.lambdas)
    if (!(l >= 0.0)) throw InputError("--lambda values must be nonnegative");
  std::optional<GridDomain> grid;
  SparseOperator h;
  if (!job.grid.empty()) {
    const auto g = parse_reals(job.grid, "--grid");
    if (g.size() != 3) throw InputError("--grid: expected d,h,R");
    if (g[0] != std::round(g[0]) || g[0] < 1 || g[0] > 3) throw InputError("--grid: d must be 1, 2 or 3");
    grid.emplace(static_cast<int>(g[0]), g[1], g[2]);
  }
  if (!job.input.empty()) h = load_operator(job.input);
  else if (grid) h = grid_laplacian(*grid);
  else throw InputError("certify needs an operator file or --grid");
  std::optional<ComplexVector> fixed;
  if (!job.psi.empty()) fixed = load_vector(job.psi);
  else if (!grid) throw InputError("certify needs --psi or --grid for the test vector");
  if (grid && grid->node_count() != h.dimension())
    throw InputError("--grid has " + std::to_string(grid->node_count()) + " nodes but the operator has dimension " +
                     std::to_string(h.dimension()));
  std::vector<double> lambdas = job.lambdas;
  std::sort(lambdas.begin(), lambdas.end());
  std::vector<WeylCertificate> certs;
  for (double lambda : lambdas) {
    ComplexVector psi;
    if (fixed) {
      psi = *fixed;
    } else {
      const double inner = job.inner_radius > 0.0 ? job.inner_radius : 0.9 * grid->half_width();
      psi = plane_wave_test_function(*grid, lambda, inner);
    }
    certs.push_back(certify(h, psi, lambda, job.alpha));
  }
  write_output(job.output, certificates_csv(certs), out);
  if (!job.plot_output.empty()) write_output(job.plot_output, emit_plot_data(certs), out);
  const bool unknown = std::any_of(certs.begin(), certs.end(),
                                   [](const auto& c) { return c.verdict == CertificateVerdict::Unknown; });
  return job.strict && unknown ? kUnknownStrict : kOk;
}

// Ground states of [-R, R] localized onto a cover of radius R'.
inline int run_localize(const JobSpec& job, std::ostream& out) {
  double h = 0.25;
  if (!job.grid.empty()) {
    const auto g = parse_reals(job.grid, "--grid");
    if (g.size() != 1) throw InputError("--grid: expected the spacing h");
    h = g[0];
  }
  const std::vector<double> radii = job.radii.empty() ? std::vector<double>{50, 100, 200} : job.radii;
  std::vector<LocalizationRow> rows;
  for (double radius : radii) {
    const DiscreteDomain domain = DiscreteDomain::interval(-radius, radius, h);
    const CoverSystem cover = gromov_cover(domain, job.r_prime);
    std::vector<double> omega(domain.node_count());
    for (std::size_t i = 0; i < omega.size(); ++i)
      omega[i] = std::cos(0.25 * kTwoPi * domain.coordinates()[i] / radius);
    const LocalizationResult res = localize_eigenvalue(domain, cover, omega);
    rows.push_back({radius, domain.coordinates()[cover.centers[res.best_center]],
                    smallest_eigenvalue(domain.laplacian()), res.localized_quotient, res.measured_constant});
  }
  write_output(job.output, localization_csv(rows), out);
  return kOk;
}

inline int run_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    if (job.command == "flat") return run_flat(job, out);
    if (job.command == "alpha") return run_alpha(job, out);
    if (job.command == "warped") return run_warped(job, out);
    if (job.command == "certify") return run_certify(job, out);
    if (job.command == "localize") return run_localize(job, out);
    throw InputError("unknown command '" + job.command + "'");
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kResourceError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kInputError;
  }
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"formspec: form spectra, Weyl certificates and warped-product classification"};
  app.require_subcommand(1);
  JobSpec job;
  std::string lambda_list;

  auto* flat = app.add_subcommand("flat", "Form spectra of a compact flat manifold");
  flat->add_option("input", job.input, "Manifold file or catalog:<name>")->required();
  flat->add_option("--lambda-max", job.lambda_max, "Spectral cutoff");
  flat->add_option("--degree", job.degrees, "Degrees to report (default all)");
  flat->add_flag("--betti", job.betti, "Report Betti numbers only");

  auto* alpha = app.add_subcommand("alpha", "alpha(K, m, n, k) for every k");
  alpha->add_option("input", job.input, "Manifold file or catalog:<name>")->required();
  alpha->add_option("--m", job.m, "Euclidean rank")->required();
  alpha->add_option("--n", job.n, "Total dimension")->required();

  auto* warped = app.add_subcommand("warped", "Essential-spectrum classification of a warped model");
  warped->add_option("input", job.input, "Model file or catalog:<name>")->required();
  warped->add_option("--grid", job.grid, "Channel grid r_min,r_max,h for --plot-out");
  warped->add_option("--lambda-max", job.lambda_max, "Fibre eigenvalue cutoff for channels");
  warped->add_option("--plot-out", job.plot_output, "Write channel potentials (channel,r,V)");

  auto* certify_cmd = app.add_subcommand("certify", "Weyl-criterion distance certificates");
  certify_cmd->add_option("input", job.input, "Operator file (dimension N; row col value)");
  certify_cmd->add_option("--lambda", lambda_list, "Comma-separated spectral points")->required();
  certify_cmd->add_option("--alpha", job.alpha, "Resolvent shift");
  certify_cmd->add_option("--grid", job.grid, "Grid d,h,R: free Laplacian and plane-wave test vectors");
  certify_cmd->add_option("--psi", job.psi, "Test vector file (re [im] per line)");
  certify_cmd->add_option("--inner-radius", job.inner_radius, "Cutoff plateau radius (default 0.9 R)");
  certify_cmd->add_option("--plot-out", job.plot_output, "Write (lambda,delta,distance_bound)");

  auto* localize = app.add_subcommand("localize", "Localize interval ground states onto Gromov covers");
  localize->add_option("--grid", job.grid, "Spacing h");
  localize->add_option("--r-prime", job.r_prime, "Packing radius R'");
  localize->add_option("--radii", job.radii, "Half-lengths R of [-R, R]")->delimiter(',');

  for (auto* sub : {flat, alpha, warped, certify_cmd, localize}) {
    sub->add_option("--out", job.output, "Output file (default stdout)");
    sub->add_flag("--strict", job.strict, "Exit 2 when any result is unknown");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  for (auto* sub : app.get_subcommands()) job.command = sub->get_name();
  if (!lambda_list.empty()) {
    try {
      job.lambdas = parse_reals(lambda_list, "--lambda");
    } catch (const InputError& e) {
      err << "input error: " << e.what() << "\n";
      return kInputError;
    }
  }
  return run_job(job, out, err);
}

}  // namespace formspec::app
