#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "format.hpp"
#include "gaussq/bounds.hpp"
#include "gaussq/errors.hpp"
#include "gaussq/fock.hpp"
#include "gaussq/fock_oracle.hpp"
#include "gaussq/gaussian_states.hpp"
#include "gaussq/parallel.hpp"
#include "gaussq/symplectic.hpp"
#include "gaussq/verify.hpp"

namespace gaussq::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Value nats(const ExtendedNats& x) {
  if (x.is_infinite()) return std::string("inf");
  return x.value();
}

Value maybe(const std::optional<ExtendedNats>& x) { return x ? nats(*x) : Value{}; }

std::vector<std::string> tags(const std::vector<Provenance>& ps) {
  std::vector<std::string> out;
  for (auto p : ps) out.emplace_back(to_string(p));
  return out;
}

Record bounds_record(std::string family, Value kappa, Value eta, double energy, const BoundReport& r) {
  return {{"family", std::move(family)}, {"kappa", std::move(kappa)}, {"eta", std::move(eta)},
          {"E", energy},                 {"lower", nats(r.lower)},    {"upper", nats(r.upper)},
          {"provenance", tags(r.provenance)}};
}

Record channel_record(std::string channel, Value kappa, Value eta, const BoundReport& r) {
  return {{"channel", std::move(channel)}, {"kappa", std::move(kappa)},  {"eta", std::move(eta)},
          {"lower", nats(r.lower)},        {"upper", nats(r.upper)},     {"exact", maybe(r.exact)},
          {"key_capacity", maybe(r.comparison)}, {"provenance", tags(r.provenance)}};
}

Record oracle_record(std::string quantity, std::string kind, Value kappa, Value eta, double energy, int cutoff,
                     double fock, double gaussian) {
  return {{"quantity", std::move(quantity)}, {"kind", std::move(kind)}, {"kappa", std::move(kappa)},
          {"eta", std::move(eta)},           {"E", energy},             {"cutoff", static_cast<long long>(cutoff)},
          {"fock", fock},                    {"gaussian", gaussian},    {"difference", fock - gaussian}};
}

Document figure1(const std::vector<double>& kappas, double e_min, double e_max, int steps, int jobs) {
  if (kappas.empty()) throw DomainError("figure1 needs at least one kappa");
  for (double k : kappas) require_gain(k);
  require_energy(e_min, "E_min");
  require_energy(e_max, "E_max");
  if (e_min > e_max) throw DomainError("E_min must not exceed E_max");
  const std::size_t per = static_cast<std::size_t>(steps);
  std::vector<Record> rows(kappas.size() * per);
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const double kappa = kappas[i / per];
    const std::size_t k = i % per;
    const double e = k + 1 == per ? e_max : e_min + (e_max - e_min) * static_cast<double>(k) / (steps - 1);
    const BoundReport b = esq_bounds_tms(kappa, e);
    rows[i] = {{"kappa", kappa},
               {"E", e},
               {"esq_lower", nats(b.lower)},
               {"esq_upper", nats(b.upper)},
               {"esq_classical", classical_esq(kappa, e).value}};
  });
  return {"figure1", std::move(rows), true};
}

Document verify(const std::string& suite, std::optional<double> tolerance, std::uint64_t seed, int jobs,
                bool& passed) {
  const VerifyReport r = run_verify(suite, tolerance, seed, jobs);
  passed = r.passed;
  Record rec{{"suite", r.suite},
             {"checks_run", static_cast<long long>(r.checks_run)},
             {"max_violation", r.max_violation},
             {"tolerance", r.tolerance},
             {"passed", r.passed},
             {"seed", static_cast<long long>(r.seed)},
             {"skipped", static_cast<long long>(r.skipped)}};
  if (!r.hints.empty()) rec.push_back({"hints", r.hints});
  return {"verify", {std::move(rec)}, false};
}

Document oracle_cmi_doc(double kappa, double energy, double eta, std::optional<int> cutoff) {
  const int n = cutoff.value_or(select_cutoff(extension_max_energy(kappa, energy)));
  const Nats fock = oracle_cmi(kappa, energy, eta, n);
  const Nats gauss = gaussian_cmi(extension_family(kappa, energy, eta), {"A"}, {"B"}, {"R"});
  return {"oracle", {oracle_record("cmi", "extension", kappa, eta, energy, n, fock, gauss)}, false};
}

Document oracle_channel_doc(const std::string& kind, double param, double energy, std::optional<int> cutoff) {
  const ChannelParam channel = kind == "att"   ? ChannelParam::attenuator(param)
                               : kind == "amp" ? ChannelParam::amplifier(param)
                                               : ChannelParam::amplifier_complement(param);
  const auto sigma = CovarianceMatrix::thermal(energy);
  const CovarianceMatrix out = kind == "att"   ? attenuator_cov(sigma, param)
                               : kind == "amp" ? amplifier_cov(sigma, param)
                                               : amplifier_complement_cov(sigma, param);
  // Largest energy in the computation: the input or the output mode.
  const double e_out = (out.matrix()(0, 0) + out.matrix()(1, 1)) / 2.0 - 0.5;
  const double e_max = std::max(energy, e_out);
  const int n = cutoff.value_or(select_cutoff(e_max));
  require_cutoff(n, e_max);
  const Nats fock = spectral_entropy(apply_channel_fock(thermal_fock(energy, n), channel));
  const bool att = kind == "att";
  return {"oracle",
          {oracle_record("output-entropy", kind, att ? Value{} : Value{param}, att ? Value{param} : Value{}, energy, n,
                         fock, gaussian_entropy(out))},
          false};
}

std::string render_to_string(const Document& doc, Format format, int precision) {
  std::ostringstream os;
  render(os, doc, format, precision);
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Squashed-entanglement bounds for bosonic Gaussian states and channels", "gaussq"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "text";
  int precision = 12;
  int jobs = default_jobs();
  auto* format_opt =
      app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--precision", precision, "Significant digits")->check(CLI::Range(1, 17));
  app.add_option("--jobs", jobs, "Worker threads (default: GAUSSQ_JOBS or all cores)")->check(CLI::PositiveNumber);

  double kappa = NAN, eta = NAN, energy = NAN, param = NAN;

  auto* bounds = app.add_subcommand("bounds", "Squashed-entanglement bounds for a state family");
  bounds->require_subcommand(1);
  auto* b_tms = bounds->add_subcommand("tms", "Squeezed thermal state");
  b_tms->add_option("--kappa", kappa)->required();
  b_tms->add_option("--energy", energy)->required();
  auto* b_att = bounds->add_subcommand("attenuator", "Attenuator output on half a two-mode squeezed vacuum");
  b_att->add_option("--eta", eta)->required();
  b_att->add_option("--energy", energy)->required();
  auto* b_amp = bounds->add_subcommand("amplifier", "Amplifier output on half a two-mode squeezed vacuum");
  b_amp->add_option("--kappa", kappa)->required();
  b_amp->add_option("--energy", energy)->required();

  auto* channel = app.add_subcommand("channel", "Channel squashed entanglement and secret-key capacity");
  channel->require_subcommand(1);
  auto* c_att = channel->add_subcommand("attenuator", "Pure-loss channel");
  c_att->add_option("--eta", eta)->required();
  auto* c_amp = channel->add_subcommand("amplifier", "Quantum-limited amplifier");
  c_amp->add_option("--kappa", kappa)->required();

  std::vector<double> kappas{1.5, 2.0, 3.0};
  double e_min = 0.0, e_max = 1.0;
  int steps = 200;
  std::string output_path;
  auto* fig = app.add_subcommand("figure1", "Bound curves for the squeezed thermal state");
  fig->add_option("--kappas", kappas, "Comma-separated gains")->delimiter(',');
  fig->add_option("--emin", e_min);
  fig->add_option("--emax", e_max);
  fig->add_option("--steps", steps)->check(CLI::Range(2, 10000000));
  fig->add_option("--output", output_path, "Write here instead of stdout");

  std::string suite;
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  auto* ver = app.add_subcommand("verify", "Run an invariant suite");
  ver->add_option("suite", suite)->required()->check(CLI::IsMember(verify_suites()));
  ver->add_option("--tolerance", tolerance);
  ver->add_option("--seed", seed);

  std::optional<int> cutoff;
  std::string kind;
  auto* oracle = app.add_subcommand("oracle", "Fock-space route next to the covariance route");
  oracle->require_subcommand(1);
  auto* o_cmi = oracle->add_subcommand("cmi", "I(A;B|R) of the extension family");
  o_cmi->add_option("--kappa", kappa)->required();
  o_cmi->add_option("--energy", energy)->required();
  o_cmi->add_option("--eta", eta)->required();
  o_cmi->add_option("--cutoff", cutoff)->check(CLI::Range(2, 1 << 20));
  auto* o_ch = oracle->add_subcommand("channel", "Output entropy on a thermal input");
  o_ch->add_option("--kind", kind)->required()->check(CLI::IsMember({"amp", "att", "comp"}));
  o_ch->add_option("--param", param)->required();
  o_ch->add_option("--energy", energy)->required();
  o_ch->add_option("--cutoff", cutoff)->check(CLI::Range(2, 1 << 20));

  std::vector<const char*> argv{"gaussq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Exit::ok : Exit::usage;
  }

  try {
    Format format = format_name == "csv" ? Format::csv : format_name == "json" ? Format::json : Format::text;
    Document doc;
    int status = Exit::ok;
    if (*b_tms) {
      doc = {"bounds", {bounds_record("tms", kappa, Value{}, energy, esq_bounds_tms(kappa, energy))}, false};
    } else if (*b_att) {
      doc = {"bounds",
             {bounds_record("attenuator", Value{}, eta, energy,
                            esq_bounds_channel_state(ChannelParam::attenuator(eta), energy))},
             false};
    } else if (*b_amp) {
      doc = {"bounds",
             {bounds_record("amplifier", kappa, Value{}, energy,
                            esq_bounds_channel_state(ChannelParam::amplifier(kappa), energy))},
             false};
    } else if (*c_att) {
      doc = {"channel", {channel_record("attenuator", Value{}, eta, channel_report(ChannelParam::attenuator(eta)))},
             false};
    } else if (*c_amp) {
      doc = {"channel", {channel_record("amplifier", kappa, Value{}, channel_report(ChannelParam::amplifier(kappa)))},
             false};
    } else if (*fig) {
      if (format_opt->count() == 0) format = Format::csv;
      if (format == Format::text) throw UsageError("figure1 writes csv or json");
      const std::string text = render_to_string(figure1(kappas, e_min, e_max, steps, jobs), format, precision);
      if (output_path.empty()) {
        out << text;
      } else {
        std::ofstream file(output_path, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open '" + output_path + "' for writing");
        file << text;
        file.close();
        if (!file) throw IoError("failed writing '" + output_path + "'");
      }
      return Exit::ok;
    } else if (*ver) {
      bool passed = false;
      doc = verify(suite, tolerance, seed, jobs, passed);
      if (!passed) status = Exit::verify_failed;
    } else if (*o_cmi) {
      doc = oracle_cmi_doc(kappa, energy, eta, cutoff);
    } else if (*o_ch) {
      doc = oracle_channel_doc(kind, param, energy, cutoff);
    }
    out << render_to_string(doc, format, precision);
    return status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << '\n' << "hint: " << e.hint() << '\n';
    return Exit::refused;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return Exit::io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Exit::domain;
  }
}

}  // namespace gaussq::cli
