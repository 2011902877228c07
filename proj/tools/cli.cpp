#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "cstar/errors.hpp"
#include "cstar/json_io.hpp"
#include "cstar/kernels.hpp"
#include "cstar/positivity.hpp"
#include "cstar/spectrum.hpp"
#include "suite.hpp"

namespace cstar::cli {

namespace {

using io::json;

struct Config {
  unsigned precision = 16;
  unsigned degree = 4;
  unsigned iterations = 20;
  std::string input;
  std::string output;
};

json read_input(const Config& cfg, std::istream& in) {
  std::string text;
  if (cfg.input.empty() || cfg.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(cfg.input);
    if (!f) throw SchemaError("cannot open input file " + cfg.input);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("input is not valid JSON: ") + e.what());
  }
}

Rational residual(const Element& root, const Element& target, Precision k) {
  return seminorm(root.squared() - target).bound(k);
}

json cmd_sqrt(const Config& cfg, const json& input) {
  const Element x = io::element_from_json(input);
  const SqrtResult r = sqrt_unit(x, cfg.iterations, cfg.precision);
  json out = io::to_json(r);
  out["residual"] = io::to_json(residual(r.root, x, cfg.precision));
  return out;
}

json cmd_abs(const Config& cfg, const json& input) {
  const Element a = io::element_from_json(input);
  const SqrtResult r = absolute_value(a, cfg.iterations, cfg.precision);
  json out = io::to_json(r);
  out["residual"] = io::to_json(residual(r.root, a.star() * a, cfg.precision));
  return out;
}

json cmd_inv(const Config& cfg, const json& input) {
  Rational eps = pow2(-16);
  json element = input;
  if (input.is_object() && input.contains("element")) {
    element = input.at("element");
    if (input.contains("epsilon")) eps = io::rational_from_json(input.at("epsilon"));
  }
  return io::to_json(invert_one_plus(io::element_from_json(element), eps, cfg.precision));
}

json cmd_norm(const Config& cfg, const json& input) {
  return json{{"norm_upper", io::to_json(seminorm(io::element_from_json(input)).bound(cfg.precision))}};
}

Element self_adjoint_diagonal(const json& input) {
  const Element a = io::element_from_json(input);
  if (a.kind() == InstanceKind::circulant || !a.is_self_adjoint()) {
    throw InvalidArgument("expected a self-adjoint diagonal element");
  }
  return to_real_diagonal(a);
}

json cmd_norm0(const Config& cfg, const json& input) {
  return json{{"norm0_upper", io::to_json(norm0(self_adjoint_diagonal(input)).bound(cfg.precision))}};
}

json cmd_transform(const Config& cfg, const json& input) {
  const Element a = io::element_from_json(input);
  if (a.kind() == InstanceKind::circulant) throw InvalidArgument("transform requires a diagonal element");
  json out = io::to_json(gelfand_transform(a), cfg.precision);
  out["norm_upper"] = io::to_json(seminorm(a).bound(cfg.precision));
  return out;
}

json cmd_certkey(const json& input) {
  if (!input.is_object() || !input.contains("a") || !input.contains("c")) {
    throw SchemaError("certkey expects {\"a\": <element>, \"c\": <element>}");
  }
  const Element a = self_adjoint_diagonal(input.at("a"));
  const Element c = self_adjoint_diagonal(input.at("c"));
  require_compatible(a, c);
  const auto w = strictly_positive(a * c);
  if (!w) throw PreconditionUnverifiable("0 << ac fails: some entry of a*c is <= 0");
  json out = io::to_json(lemma_key_bound(a, c, *w));
  out["s"] = io::to_json(w->s);
  return out;
}

json cmd_entail(const Config& cfg, const json& input, bool& found) {
  const io::EntailQuery q = io::entail_query_from_json(input);
  const CertSearchOptions opts{q.has_degree ? q.degree : cfg.degree};
  json out{{"spatial", spatial_entails(q.left, q.right, q.dim)}};
  const bool flat = std::all_of(q.right.begin(), q.right.end(), [](const Clause& c) { return c.size() == 1; });
  if (flat) {
    std::vector<Element> right;
    for (const auto& c : q.right) right.push_back(c.front());
    const auto cert = cert_entails(q.left, right, q.dim, opts);
    found = cert.has_value();
    out["certificate"] = found ? io::to_json(*cert) : json("none-at-degree");
  } else {
    std::vector<Clause> clauses = q.right;
    const auto certs = cert_entails(q.left, LatticeTerm::from_clauses(q.dim, std::move(clauses)), opts);
    found = certs.has_value();
    if (found) {
      json choices = json::array();
      for (const auto& c : *certs) choices.push_back(json{{"picks", c.picks}, {"certificate", io::to_json(c.cert)}});
      out["certificate"] = json{{"choices", std::move(choices)}};
    } else {
      out["certificate"] = "none-at-degree";
    }
  }
  out["degree"] = opts.degree;
  return out;
}

void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text << '\n';
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw SchemaError("cannot open output file " + cfg.output);
  f << text << '\n';
}

void error_line(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", message}, {"kind", kind}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Certified computations in commutative C*-algebras"};
  app.require_subcommand(1);
  app.add_option("--precision", cfg.precision, "precision index k for upper-real bounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--degree", cfg.degree, "degree bound for entailment certificates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--iters", cfg.iterations, "square-root iterations")
      ->check(CLI::Range(1u, kMaxSqrtIterations))
      ->capture_default_str();
  app.add_option("--input", cfg.input, "input JSON file (default: stdin)");
  app.add_option("--output", cfg.output, "output file (default: stdout)");
  app.fallthrough();

  const char* names[][2] = {
      {"sqrt", "square root of x with ||1 - x|| <= 1"},
      {"abs", "absolute value sqrt(a*a)"},
      {"inv", "inverse of 1 + a*a"},
      {"norm", "upper bound on ||a||"},
      {"norm0", "upper bound on the spectral seminorm"},
      {"entail", "decide and certify an entailment query"},
      {"transform", "Gelfand transform table"},
      {"certkey", "rational lower bound for a from 0 << ac"},
      {"check", "run the acceptance property suite"},
  };
  for (const auto& [name, help] : names) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", e.what());
    return kSchema;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "check") {
      suite::SuiteOptions opts{suite::seed_from_env()};
      std::ofstream file;
      if (!cfg.output.empty() && cfg.output != "-") {
        file.open(cfg.output);
        if (!file) throw SchemaError("cannot open output file " + cfg.output);
      }
      std::ostream& sink = file.is_open() ? file : out;
      bool all = true;
      for (const auto& [id, criterion] : suite::criteria()) {
        const auto r = criterion(opts);
        all = all && r.passed;
        sink << suite::format_line(r) << std::endl;
      }
      return all ? kOk : kInternal;
    }
    const json input = read_input(cfg, in);
    json result;
    bool found = true;
    if (cmd == "sqrt") result = cmd_sqrt(cfg, input);
    else if (cmd == "abs") result = cmd_abs(cfg, input);
    else if (cmd == "inv") result = cmd_inv(cfg, input);
    else if (cmd == "norm") result = cmd_norm(cfg, input);
    else if (cmd == "norm0") result = cmd_norm0(cfg, input);
    else if (cmd == "transform") result = cmd_transform(cfg, input);
    else if (cmd == "certkey") result = cmd_certkey(input);
    else if (cmd == "entail") result = cmd_entail(cfg, input, found);
    emit(cfg, out, result.dump());
    if (!found) {
      error_line(err, "none-at-degree", "no certificate within the degree bound");
      return kNoneAtDegree;
    }
    return kOk;
  } catch (const PreconditionUnverifiable& e) {
    error_line(err, "precondition", e.what());
    return kPrecondition;
  } catch (const InvalidArgument& e) {
    error_line(err, "schema", e.what());
    return kSchema;
  } catch (const json::exception& e) {
    error_line(err, "schema", e.what());
    return kSchema;
  } catch (const std::exception& e) {
    error_line(err, "internal", e.what());
    return kInternal;
  }
}

}  // namespace cstar::cli
