#pragma once

// Command-line front end. parse_command_line fills a RunConfig; run executes
// it and writes JSON, text or LaTeX to `out`, diagnostics and progress to
// `err`. Exit codes: 0 ok, 1 internal error or failed check, 2 invalid input,
// 3 empty face, 4 budget exceeded.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "birkhoff/ehrhart.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/integration.hpp"
#include "birkhoff/io.hpp"
#include "birkhoff/mgf.hpp"
#include "birkhoff/oracle.hpp"
#include "birkhoff/verify.hpp"

namespace birkhoff {

enum class Command { ehrhart, volume, count, mgf, integrate, verify };
enum class OutputFormat { json, text, latex };
enum class Method { formula, oracle };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitEmptyFace = 3;
inline constexpr int kExitBudget = 4;

/// Above this many stream slots `mgf` refuses to export the terms.
inline constexpr std::size_t kMaxExportSlots = 200000;

struct RunConfig {
  Command command = Command::ehrhart;
  int n = 0;
  std::string zeros;           // "i,j;i,j", 1-based
  bool cry = false;
  std::string facet;           // "i,j", 1-based
  int root = 1;                // 1-based
  std::optional<long> t;
  std::optional<long> power;
  std::string form_path;
  OutputFormat format = OutputFormat::json;
  unsigned threads = 1;
  Method method = Method::formula;
  bool progress = true;
};

inline std::string command_name(Command c) {
  switch (c) {
    case Command::ehrhart: return "ehrhart";
    case Command::volume: return "volume";
    case Command::count: return "count";
    case Command::mgf: return "mgf";
    case Command::integrate: return "integrate";
    case Command::verify: return "verify";
  }
  return "?";
}

/// Checks flag combinations and resolves the zero pattern. Throws InvalidInput.
inline ZeroPattern validate(const RunConfig& cfg) {
  if (cfg.n < 2 || cfg.n > 8) throw InvalidInput("--n must lie in [2, 8]");
  if (cfg.root < 1 || cfg.root > cfg.n) throw InvalidInput("--root must lie in [1, n]");
  if (cfg.threads < 1) throw InvalidInput("--threads must be positive");
  const int face_flags = (!cfg.zeros.empty() ? 1 : 0) + (cfg.cry ? 1 : 0) + (!cfg.facet.empty() ? 1 : 0);
  if (face_flags > 1) throw InvalidInput("use at most one of --zeros, --cry, --facet");

  const bool is_count = cfg.command == Command::count;
  const bool is_integrate = cfg.command == Command::integrate;
  if (is_count != cfg.t.has_value()) throw InvalidInput(is_count ? "count needs --t" : "--t applies to count only");
  if (cfg.t && *cfg.t < 0) throw InvalidInput("--t must be nonnegative");
  if (!is_integrate && (cfg.power || !cfg.form_path.empty()))
    throw InvalidInput("--power and --form apply to integrate only");
  if (is_integrate && (!cfg.power || cfg.form_path.empty())) throw InvalidInput("integrate needs --power and --form");
  if (cfg.power && *cfg.power < 0) throw InvalidInput("--power must be nonnegative");
  if (cfg.method == Method::oracle &&
      (cfg.command == Command::mgf || is_integrate || cfg.command == Command::verify))
    throw InvalidInput("--method oracle applies to ehrhart, volume and count");
  if (cfg.command == Command::verify && face_flags > 0) throw InvalidInput("verify takes no zero pattern");
  if (cfg.command == Command::verify && cfg.format == OutputFormat::latex)
    throw InvalidInput("verify has no LaTeX output");
  if (cfg.command == Command::mgf && cfg.format == OutputFormat::latex && cfg.n > 3)
    throw InvalidInput("LaTeX rendering is limited to n <= 3");

  if (cfg.cry) return ZeroPattern::cry(cfg.n);
  if (!cfg.facet.empty()) return ZeroPattern(cfg.n, {parse_cell(cfg.facet, cfg.n)});
  return parse_zero_pattern(cfg.zeros, cfg.n);
}

namespace detail {

struct Report {
  Json json;
  std::string text;
};

inline ParallelOptions parallel_options(const RunConfig& cfg, std::ostream& err) {
  ParallelOptions p;
  p.threads = cfg.threads;
  if (cfg.progress)
    p.progress = [&err](std::size_t done, std::size_t total, double rate) {
      err << "progress: " << done << "/" << total << " terms, " << static_cast<long>(rate) << " terms/s\n";
      err.flush();
    };
  return p;
}

inline TermSource make_terms(const RunConfig& cfg, const ZeroPattern& zeros) {
  return zeros.empty() ? birkhoff_terms(cfg.n, cfg.root - 1) : face_terms(cfg.n, cfg.root - 1, zeros);
}

inline std::string format_rational(const Rational& r, OutputFormat f) {
  return f == OutputFormat::latex ? latex_rational(r) : r.to_string();
}

// Dimension from the ray counts, with a warning when it differs from the
// count of free entries.
inline StreamSummary summarize(const TermSource& terms, const ZeroPattern& zeros, const ParallelOptions& par,
                               Json& json, std::ostream& err) {
  const StreamSummary s = summarize_terms(terms, par);
  if (s.term_count == 0) throw InternalInconsistency("the face produced no terms");
  if (!zeros.empty() && s.max_rays != expected_face_dimension(zeros)) {
    const std::string msg = "face dimension " + std::to_string(s.max_rays) + " differs from (n-1)^2 - |Z| = " +
                            std::to_string(expected_face_dimension(zeros));
    err << "warning: " << msg << "\n";
    json["warnings"] = Json::array({msg});
  }
  return s;
}

inline void run_ehrhart(const RunConfig& cfg, const ZeroPattern& zeros, Report& rep, std::ostream& err) {
  const auto par = parallel_options(cfg, err);
  Polynomial poly;
  int dim = 0;
  if (cfg.method == Method::oracle) {
    dim = face_dimension(zeros);
    poly = oracle_ehrhart(cfg.n, zeros, dim);
    rep.json["dimension"] = dim;
    rep.json["term_count"] = nullptr;
  } else {
    const auto terms = make_terms(cfg, zeros);
    const auto s = summarize(terms, zeros, par, rep.json, err);
    dim = s.max_rays;
    poly = ehrhart_polynomial(terms, dim, GenericVector(cfg.n), par).polynomial;
    rep.json["dimension"] = dim;
    rep.json["term_count"] = s.term_count;
  }
  const Rational lead = poly.leading();
  const Rational vol = lead * Rational(factorial(static_cast<unsigned long>(dim)));
  if (cfg.command == Command::volume) {
    rep.json["result"] = vol.to_string();
    rep.text = format_rational(vol, cfg.format) + "\n";
    if (cfg.format == OutputFormat::text) rep.text = "normalized volume: " + rep.text + "dimension: " + std::to_string(dim) + "\n";
    return;
  }
  rep.json["result"] = polynomial_json(poly);
  rep.json["leading_coefficient"] = lead.to_string();
  rep.json["normalized_volume"] = vol.to_string();
  if (cfg.format == OutputFormat::latex) {
    rep.text = latex_polynomial(poly) + "\n";
  } else {
    rep.text = "e(t) = " + poly.to_string() + "\n" + "dimension: " + std::to_string(dim) + "\n" +
               "leading coefficient: " + lead.to_string() + "\n" + "normalized volume: " + vol.to_string() + "\n";
  }
}

// volume by the leading residue alone, without Todd polynomials.
inline void run_volume(const RunConfig& cfg, const ZeroPattern& zeros, Report& rep, std::ostream& err) {
  if (cfg.method == Method::oracle) return run_ehrhart(cfg, zeros, rep, err);
  const auto par = parallel_options(cfg, err);
  const auto terms = make_terms(cfg, zeros);
  const auto s = summarize(terms, zeros, par, rep.json, err);
  const Rational vol = volume(terms, s.max_rays, GenericVector(cfg.n), par);
  rep.json["dimension"] = s.max_rays;
  rep.json["term_count"] = s.term_count;
  rep.json["result"] = vol.to_string();
  rep.text = cfg.format == OutputFormat::text
                 ? "normalized volume: " + vol.to_string() + "\ndimension: " + std::to_string(s.max_rays) + "\n"
                 : format_rational(vol, cfg.format) + "\n";
}

inline void run_count(const RunConfig& cfg, const ZeroPattern& zeros, Report& rep, std::ostream& err) {
  const long t = *cfg.t;
  rep.json["t"] = t;
  Integer count;
  if (cfg.method == Method::oracle) {
    count = count_semimagic(cfg.n, t, zeros);
    rep.json["dimension"] = face_dimension(zeros);
    rep.json["term_count"] = nullptr;
  } else {
    const auto par = parallel_options(cfg, err);
    const auto terms = make_terms(cfg, zeros);
    const auto s = summarize(terms, zeros, par, rep.json, err);
    count = count_lattice_points(terms, t, GenericVector(cfg.n), par);
    rep.json["dimension"] = s.max_rays;
    rep.json["term_count"] = s.term_count;
  }
  rep.json["result"] = count.get_str();
  rep.text = cfg.format == OutputFormat::text ? "e(" + std::to_string(t) + ") = " + count.get_str() + "\n"
                                              : count.get_str() + "\n";
}

inline std::string text_ray(const RayMatrix& b) {
  std::string s = "[";
  for (int i = 0; i < b.size(); ++i) {
    if (i > 0) s += "; ";
    for (int j = 0; j < b.size(); ++j) s += (j > 0 ? " " : "") + std::to_string(static_cast<int>(b(i, j)));
  }
  return s + "]";
}

inline void run_mgf(const RunConfig& cfg, const ZeroPattern& zeros, Report& rep, std::ostream& err) {
  const auto par = parallel_options(cfg, err);
  const auto terms = make_terms(cfg, zeros);
  if (terms.size() > kMaxExportSlots)
    throw BudgetExceeded("term export is limited to " + std::to_string(kMaxExportSlots) + " stream slots");
  const auto s = summarize(terms, zeros, par, rep.json, err);
  rep.json["dimension"] = s.max_rays;
  rep.json["term_count"] = s.term_count;
  if (cfg.format == OutputFormat::json) {
    rep.json["result"] = terms_json(terms);
  } else if (cfg.format == OutputFormat::latex) {
    rep.text = latex_mgf(terms);
  } else {
    terms.for_each([&](const ConeTerm& term) {
      rep.text += term.sign > 0 ? "+" : "-";
      rep.text += " vertex";
      for (int v : term.vertex.image()) rep.text += " " + std::to_string(v + 1);
      rep.text += " rays";
      for (const auto& ray : term.rays) rep.text += " " + text_ray(ray);
      rep.text += "\n";
    });
  }
}

inline void run_integrate(const RunConfig& cfg, const ZeroPattern& zeros, Report& rep, std::ostream& err) {
  std::ifstream in(cfg.form_path);
  if (!in) throw InvalidInput("cannot open linear form file '" + cfg.form_path + "'");
  const LinearForm y = read_linear_form(in);
  if (y.n() != cfg.n) throw InvalidInput("linear form size does not match --n");
  IntegrationOptions opts;
  opts.parallel = parallel_options(cfg, err);
  const auto terms = make_terms(cfg, zeros);
  const auto s = summarize(terms, zeros, opts.parallel, rep.json, err);
  const Rational value = integrate_power(terms, s.max_rays, y, *cfg.power, opts);
  rep.json["dimension"] = s.max_rays;
  rep.json["term_count"] = s.term_count;
  rep.json["power"] = *cfg.power;
  rep.json["result"] = value.to_string();
  rep.text = cfg.format == OutputFormat::text
                 ? "integral: " + value.to_string() + "\nmeasure: normalized (unimodular simplex = 1)\n"
                 : format_rational(value, cfg.format) + "\n";
}

inline bool run_verify(const RunConfig& cfg, Report& rep) {
  const auto checks = run_invariant_suite(cfg.n);
  bool ok = true;
  Json arr = Json::array();
  for (const auto& c : checks) {
    ok = ok && c.passed;
    arr.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    rep.text += std::string(c.passed ? "PASS " : "FAIL ") + c.name + " (" + c.detail + ")\n";
  }
  rep.json["dimension"] = (cfg.n - 1) * (cfg.n - 1);
  rep.json["term_count"] = nullptr;
  rep.json["result"] = std::move(arr);
  rep.json["all_passed"] = ok;
  return ok;
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const ZeroPattern zeros = validate(cfg);
    detail::Report rep;
    rep.json["schema"] = 1;
    rep.json["command"] = command_name(cfg.command);
    rep.json["n"] = cfg.n;
    rep.json["root"] = cfg.root;
    rep.json["zero_pattern"] = zero_pattern_json(zeros);
    rep.json["method"] = cfg.method == Method::oracle ? "oracle" : "formula";
    bool ok = true;
    switch (cfg.command) {
      case Command::ehrhart: detail::run_ehrhart(cfg, zeros, rep, err); break;
      case Command::volume: detail::run_volume(cfg, zeros, rep, err); break;
      case Command::count: detail::run_count(cfg, zeros, rep, err); break;
      case Command::mgf: detail::run_mgf(cfg, zeros, rep, err); break;
      case Command::integrate: detail::run_integrate(cfg, zeros, rep, err); break;
      case Command::verify: ok = detail::run_verify(cfg, rep); break;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    rep.json["elapsed_ms"] = ms.count();
    if (cfg.format == OutputFormat::json)
      out << rep.json.dump(2) << "\n";
    else
      out << rep.text;
    return ok ? kExitOk : kExitInternal;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const EmptyFace& e) {
    err << "error: " << e.what() << "\n";
    return kExitEmptyFace;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

/// Parses argv into `cfg`. Returns an exit code when the program should stop
/// here (help, or a usage error), nullopt to go on and run.
inline std::optional<int> parse_command_line(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                                             std::ostream& err) {
  CLI::App app{"Exact Ehrhart polynomials, volumes and integrals for the Birkhoff polytope and its faces"};
  app.require_subcommand(1);

  const std::map<std::string, OutputFormat> formats{
      {"json", OutputFormat::json}, {"text", OutputFormat::text}, {"latex", OutputFormat::latex}};
  const std::map<std::string, Method> methods{{"formula", Method::formula}, {"oracle", Method::oracle}};

  auto add = [&](const std::string& name, Command command, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&cfg, command] { cfg.command = command; });
    sub->add_option("--n", cfg.n, "matrix size")->required();
    sub->add_option("--format", cfg.format, "json, text or latex")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_flag("!--no-progress", cfg.progress, "silence progress reports on stderr");
    if (command == Command::verify) return sub;
    sub->add_option("--zeros", cfg.zeros, "forbidden cells, 1-based \"i,j;i,j\"");
    sub->add_flag("--cry", cfg.cry, "Chan-Robbins-Yuen pattern: zeros where i - j >= 2");
    sub->add_option("--facet", cfg.facet, "single forbidden cell \"i,j\"");
    sub->add_option("--root", cfg.root, "arborescence root (1-based)");
    return sub;
  };
  add("ehrhart", Command::ehrhart, "Ehrhart polynomial")
      ->add_option("--method", cfg.method, "formula or oracle")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  add("volume", Command::volume, "normalized volume")
      ->add_option("--method", cfg.method, "formula or oracle")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  auto* count = add("count", Command::count, "lattice points of the t-th dilate");
  count->add_option("--t", cfg.t, "dilation");
  count->add_option("--method", cfg.method, "formula or oracle")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  add("mgf", Command::mgf, "generating-function terms");
  auto* integ = add("integrate", Command::integrate, "integral of <y,x>^p in the normalized measure");
  integ->add_option("--power", cfg.power, "exponent p");
  integ->add_option("--form", cfg.form_path, "JSON file {\"n\": n, \"y\": [[\"p/q\", ...], ...]}");
  add("verify", Command::verify, "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  return std::nullopt;
}

}  // namespace birkhoff
