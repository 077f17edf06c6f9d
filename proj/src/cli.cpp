#include "gospace/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gospace/error.hpp"
#include "gospace/sampling.hpp"

namespace gospace {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kEvidenceNote =
    "verdicts are sampled numerical evidence at the stated tolerance, not a proof";

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  return std::nullopt;
}

double default_tolerance() {
  if (const char* env = std::getenv("GOSPACE_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return 1e-8;
}

std::string render_check(const CheckRun& run, Format format) {
  const std::string go = std::string(to_string(run.go.verdict));
  const std::string nr = std::string(to_string(run.nr.verdict));
  if (format == Format::Csv) {
    std::ostringstream os;
    os << "space,metric,go,nr,max_operator,max_spray,max_nr,max_discrepancy,seed,tol,samples,skipped,wallclock\n";
    os << csv_field(run.info.id) << ',' << csv_field(run.metric) << ',' << go << ',' << nr << ','
       << num(run.go.max_residual) << ',' << num(run.go.max_residual_spray) << ',' << num(run.nr.max_residual) << ','
       << num(run.go.max_discrepancy) << ',' << run.seed << ',' << num(run.tol) << ',' << run.samples << ','
       << run.go.skipped << ',' << num(run.wallclock) << '\n';
    return os.str();
  }
  if (format == Format::Text) {
    std::ostringstream os;
    os << "space      " << run.info.id << " (" << run.info.canonical << ")\n"
       << "metric     " << run.metric << '\n'
       << "g.o.       " << go << "  operator " << num(run.go.max_residual) << "  spray "
       << num(run.go.max_residual_spray) << '\n'
       << "nat. red.  " << nr << "  residual " << num(run.nr.max_residual) << '\n'
       << "samples    " << run.samples << " (" << run.go.skipped << " on non-differentiable faces), seed "
       << run.seed << ", tol " << num(run.tol) << '\n';
    if (run.go.consistency_flag) os << "warning    operator and spray criteria disagree on some sample\n";
    os << "note       " << kEvidenceNote << '\n';
    return os.str();
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "check";
  j["space"] = {{"id", run.info.id},
                {"canonical", run.info.canonical},
                {"description", run.info.description},
                {"dim_g", run.dim_g},
                {"dim_h", run.dim_h},
                {"dims", run.dims},
                {"tags", run.info.tags}};
  j["metric"] = {{"spec", run.metric}, {"kind", std::string(to_string(run.metric_kind))}};
  j["verdicts"] = {{"go", go}, {"nr", nr}};
  j["max_residuals"] = {{"operator", run.go.max_residual},
                        {"spray", run.go.max_residual_spray},
                        {"nr", run.nr.max_residual},
                        {"discrepancy", run.go.max_discrepancy}};
  j["witness"] = {
      {"go", {{"u", vec_json(run.go.witness)}, {"operator", run.go.witness_residual}, {"spray", run.go.witness_residual_spray}}},
      {"nr", {{"u", vec_json(run.nr.witness)}, {"residual", run.nr.witness_residual}}}};
  j["consistency"] = {{"disagreements", run.go.disagreements}, {"flag", run.go.consistency_flag}};
  j["seed"] = run.seed;
  j["tol"] = run.tol;
  j["samples"] = run.samples;
  j["skipped"] = run.go.skipped;
  j["note"] = kEvidenceNote;
  j["wallclock"] = run.wallclock;
  return j.dump(2) + "\n";
}

std::string render_suite(const SuiteReport& report, const SuiteOptions& options, double wallclock, Format format) {
  if (format == Format::Csv) {
    std::string out = "item,passed,detail\n";
    for (const auto& it : report.items)
      out += csv_field(it.name) + ',' + (it.passed ? "true" : "false") + ',' + csv_field(it.detail) + '\n';
    return out;
  }
  if (format == Format::Text) {
    std::string out;
    for (const auto& it : report.items) out += std::string(it.passed ? "PASS  " : "FAIL  ") + it.name + "  " + it.detail + '\n';
    out += report.suite + ": " + (report.passed() ? "PASS" : "FAIL") + '\n';
    return out;
  }
  Json items = Json::array();
  for (const auto& it : report.items) items.push_back({{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "verify";
  j["suite"] = report.suite;
  j["passed"] = report.passed();
  j["items"] = std::move(items);
  j["seed"] = options.seed;
  j["tol"] = options.tol;
  j["samples"] = options.samples;
  j["note"] = kEvidenceNote;
  j["wallclock"] = wallclock;
  return j.dump(2) + "\n";
}

std::string render_list(const std::vector<CatalogEntry>& entries, Format format) {
  if (format == Format::Json) {
    Json a = Json::array();
    for (const auto& e : entries) a.push_back({{"id", e.id}, {"description", e.description}, {"tags", e.tags}});
    return a.dump(2) + "\n";
  }
  std::string out = format == Format::Csv ? "id,tags,description\n" : "";
  for (const auto& e : entries) {
    if (format == Format::Csv) {
      out += csv_field(e.id) + ',' + csv_field(join(e.tags, ";")) + ',' + csv_field(e.description) + '\n';
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%-20s", e.id.c_str());
      out += buf + ("[" + join(e.tags, ", ") + "]  " + e.description) + '\n';
    }
  }
  return out;
}

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidProfile:
    case ErrorCode::NotStronglyConvex:
    case ErrorCode::NonPositiveCoefficient:
      return kExitMetricRejected;
    case ErrorCode::SpecParse:
    case ErrorCode::UnknownSpec:
    case ErrorCode::UnsupportedRank:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
      return kExitUsage;
    default:
      return kExitInternal;
  }
}

int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kExitInternal;
  }
  f << text;
  return kExitOk;
}

Format format_of(const std::string& s) { return *parse_format(s); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic-orbit checks for standard homogeneous Finsler metrics", "gospace"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gospace 1.0");

  const std::vector<std::string> formats = {"json", "csv", "text"};
  std::string format = "json";
  std::string out_path;
  int threads = 0;
  double rank_rtol = -1.0;
  int samples = 200;
  std::uint64_t seed = 42;
  double tol = default_tolerance();

  auto* list = app.add_subcommand("list", "List catalog spaces");
  std::string tag_filter;
  std::string list_format = "text";
  list->add_option("--tags", tag_filter, "Only entries with a tag containing this text");
  list->add_option("--format", list_format, "Output format")->check(CLI::IsMember(formats));

  auto* check = app.add_subcommand("check", "Run the g.o. and naturally-reductive checks");
  std::string space_id;
  std::string metric_spec;
  std::string expect;
  check->add_option("--space", space_id, "Space spec, e.g. so5/u2 or wallach-su/1,1,1")->required();
  check->add_option("--metric", metric_spec, "linear:l1,l2[,...] | phi:c0,c1,... | pert3:l1,l2,l3,eps")->required();
  check->add_option("--expect", expect, "Expected verdict")
      ->check(CLI::IsMember({"GO", "NOT_GO", "NR", "NOT_NR", "INCONCLUSIVE"}));

  auto* verify = app.add_subcommand("verify", "Run a named replay suite");
  std::string suite;
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));

  for (auto* sub : {check, verify}) {
    sub->add_option("--samples", samples, "Samples per check")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--tol", tol, "Residual tolerance (default: GOSPACE_TOL or 1e-8)")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember(formats));
    sub->add_option("--out", out_path, "Write the report to this file");
    sub->add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--rank-rtol", rank_rtol, "Relative singular-value cutoff for rank decisions")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*list) {
      return emit(render_list(filter_catalog(tag_filter), format_of(list_format)), "", out, err);
    }
    // both settings are process-wide; put them back for in-process callers
    struct Restore {
      double rtol = default_rank_rtol();
      int threads = max_threads();
      ~Restore() {
        set_default_rank_rtol(rtol);
        set_threads(threads);
      }
    } restore;
    if (threads > 0) set_threads(threads);
    if (rank_rtol > 0.0) set_default_rank_rtol(rank_rtol);
    const auto t0 = std::chrono::steady_clock::now();
    auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

    if (*verify) {
      const SuiteOptions options{samples, seed, tol};
      const SuiteReport report = run_suite(suite, options);
      const int rc = emit(render_suite(report, options, seconds(), format_of(format)), out_path, out, err);
      if (rc != kExitOk) return rc;
      if (!out_path.empty()) out << suite << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
      return report.passed() ? kExitOk : kExitMismatch;
    }

    const CatalogSpace cs = make_space(space_id);
    const LFunction l = parse_metric(metric_spec);
    if (l.arity() != static_cast<Eigen::Index>(cs.decomposition.size())) {
      throw Error(ErrorCode::DimensionMismatch, "metric '" + metric_spec + "' takes " + std::to_string(l.arity()) +
                                                    " arguments but " + space_id + " has " +
                                                    std::to_string(cs.decomposition.size()) + " summands");
    }
    CheckRun run;
    run.info = cs.info;
    run.dims = cs.decomposition.dims();
    run.dim_g = cs.space.dim_g();
    run.dim_h = cs.space.dim_h();
    run.metric = metric_spec;
    run.metric_kind = l.kind();
    run.samples = samples;
    run.seed = seed;
    run.tol = tol;
    run.go = go_verdict(cs.space, cs.decomposition, l, samples, seed, tol);
    run.nr = nr_check(cs.space, cs.decomposition, l, samples, seed, tol);
    run.wallclock = seconds();
    const int rc = emit(render_check(run, format_of(format)), out_path, out, err);
    if (rc != kExitOk) return rc;
    if (!out_path.empty()) {
      out << space_id << ' ' << metric_spec << ": " << to_string(run.go.verdict) << ", " << to_string(run.nr.verdict)
          << '\n';
    }
    if (!expect.empty()) {
      const Verdict want = *verdict_from_string(expect);
      const bool nr_expect = want == Verdict::NR || want == Verdict::NOT_NR;
      const Verdict got = nr_expect ? run.nr.verdict : run.go.verdict;
      if (got == want) return kExitOk;
      if (!nr_expect && got == Verdict::INCONCLUSIVE) return kExitInconclusive;
      err << "expected " << expect << ", got " << to_string(got) << '\n';
      return kExitMismatch;
    }
    return run.go.verdict == Verdict::INCONCLUSIVE ? kExitInconclusive : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gospace");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gospace
