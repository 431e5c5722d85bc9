#include "permutangle/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "permutangle/error.hpp"
#include "permutangle/experiments.hpp"
#include "permutangle/families.hpp"
#include "permutangle/records.hpp"

namespace permutangle::cli {
namespace {

double parse_number(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DomainError(what + ": '" + s + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> params;
  if (text.empty()) return params;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("--params: expected k=v, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (params.count(key)) throw DomainError("--params: '" + key + "' given twice");
    params[key] = parse_number(item.substr(eq + 1), "--params " + key);
  }
  return params;
}

Dims parse_dims(const std::string& text) {
  Dims dims;
  for (const auto& part : split(text, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v == 0)
      throw DomainError("--dims: '" + part + "' is not a positive integer");
    dims.push_back(v);
  }
  return dims;
}

// Output goes to --out when given, stdout otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot open output file " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit_records(std::ostream& out, const std::string& format, const std::vector<MeasureRecord>& records) {
  if (format == "json")
    out << records_to_json(records).dump(2) << '\n';
  else
    write_records_csv(out, records);
}

std::vector<MeasureRecord> load_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("--input: cannot open " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("--input: ") + e.what());
    }
    return records_from_json(j);
  }
  return read_records_csv(in);
}

struct Options {
  std::string format = "csv";
  std::string out;
  // measure
  std::string family;
  std::string params;
  // sample / perturb
  std::string dims;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string kind;
  double eps = 0.51;
  // curve
  std::string curve_id;
  std::size_t points = 512;
  // figure
  int fig_id = 0;
  std::uint64_t fig_seed = 1;
  std::size_t fig_n = 0;
  // verify
  std::string region;
  std::string input;
  bool expect_violations = false;
};

int do_measure(const Options& o, std::ostream& stdout_) {
  const FamilySpec spec{o.family, parse_params(o.params)};
  const MeasureMap closed = closed_form_measures(spec);
  const MeasureMap numeric = numeric_measures(make_state(spec));
  Sink sink(o.out, stdout_);
  auto& out = sink.stream();
  if (o.format == "json") {
    nlohmann::json j;
    j["family"] = spec.family;
    j["params"] = spec.params;
    j["closed_form"] = closed;
    j["numeric"] = numeric;
    nlohmann::json diff = nlohmann::json::object();
    for (const auto& [k, v] : closed)
      if (numeric.count(k)) diff[k] = std::abs(numeric.at(k) - v);
    j["diff"] = diff;
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "measure,closed_form,numeric,diff\n";
  std::set<std::string> names;
  for (const auto& [k, v] : closed) names.insert(k);
  for (const auto& [k, v] : numeric) names.insert(k);
  for (const auto& k : names) {
    const bool hc = closed.count(k) != 0, hn = numeric.count(k) != 0;
    out << k << ',' << (hc ? format_double(closed.at(k)) : "") << ',' << (hn ? format_double(numeric.at(k)) : "")
        << ',' << (hc && hn ? format_double(std::abs(numeric.at(k) - closed.at(k))) : "") << '\n';
  }
  return kOk;
}

int do_sample(const Options& o, std::ostream& stdout_) {
  CampaignConfig c;
  c.kind = "scatter";
  c.dims = parse_dims(o.dims);
  c.n = o.n;
  c.seed = o.seed;
  c.threads = o.threads;
  const auto records = scatter(c);
  Sink sink(o.out, stdout_);
  emit_records(sink.stream(), o.format, records);
  return kOk;
}

int do_perturb(const Options& o, std::ostream& stdout_) {
  CampaignConfig c;
  c.kind = o.kind;
  c.n = o.n;
  c.seed = o.seed;
  c.epsilon = o.eps;
  c.threads = o.threads;
  const auto records = perturbation_campaign(o.kind, c);
  Sink sink(o.out, stdout_);
  emit_records(sink.stream(), o.format, records);
  return kOk;
}

int do_curve(const Options& o, std::ostream& stdout_) {
  const auto points = boundary_curve(o.curve_id, default_grid(o.curve_id, o.points));
  Sink sink(o.out, stdout_);
  auto& out = sink.stream();
  if (o.format == "json") {
    const CurveInfo& info = curve_info(o.curve_id);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) arr.push_back({{info.x_name, p.x}, {info.y_name, p.y}});
    out << nlohmann::json{{"curve", o.curve_id}, {"points", arr}}.dump(2) << '\n';
  } else {
    write_curve_csv(out, o.curve_id, points);
  }
  return kOk;
}

int do_figure(const Options& o, std::ostream& stdout_) {
  FigureConfig c;
  c.out_dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
  c.n = o.fig_n;
  c.seed = o.fig_seed;
  c.epsilon = o.eps;
  c.threads = o.threads;
  const FigureBundle b = figure_dataset(o.fig_id, c);
  for (const auto& f : b.files) stdout_ << f.string() << '\n';
  bool ok = true;
  for (const auto& chk : b.meta.at("checks"))
    if (chk.at("must_hold").get<bool>() && chk.at("violations").get<std::size_t>() > 0) ok = false;
  return ok ? kOk : kViolation;
}

int do_verify(const Options& o, std::ostream& stdout_) {
  const auto records = load_records(o.input);
  const ViolationReport rep = verify(records, o.region);
  Sink sink(o.out, stdout_);
  auto& out = sink.stream();
  if (o.format == "json") {
    out << to_json(rep).dump(2) << '\n';
  } else {
    out << "region,total,violations,worst_margin,tolerance\n"
        << rep.region << ',' << rep.total << ',' << rep.violations << ','
        << (std::isfinite(rep.worst_margin) ? format_double(rep.worst_margin) : "") << ','
        << format_double(rep.tolerance) << '\n';
    if (!rep.offending.empty()) {
      out << "# offending records\n";
      write_records_csv(out, rep.offending);
    }
  }
  const bool pass = o.expect_violations ? rep.violations > 0 : rep.violations == 0;
  return pass ? kOk : kViolation;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation-based correlation measures for small quantum states", "permutangle"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  auto add_output = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", o.out, "Output file (stdout when omitted)");
  };
  auto add_threads = [&o](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads (0: PERMUTANGLE_THREADS or hardware)")
        ->capture_default_str();
  };

  auto* measure = app.add_subcommand("measure", "Closed-form and numeric measures of a named state family");
  measure->add_option("--family", o.family, "Family tag: " + join(family_tags()))->required();
  measure->add_option("--params", o.params, "Parameters as k=v,k=v");
  add_output(measure);

  auto* sample = app.add_subcommand("sample", "Haar scatter of two-qubit reductions");
  sample->add_option("--dims", o.dims, "Factor dimensions: 2,2 | 2,2,2 | 2,2,3 | 2,2,4")->required();
  sample->add_option("--n", o.n, "Sample count")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed, "Random seed")->required();
  add_threads(sample);
  add_output(sample);

  auto* curve = app.add_subcommand("curve", "Analytic boundary curve");
  std::vector<std::string> curve_tags;
  for (const auto& c : curve_catalog()) curve_tags.push_back(c.tag);
  curve->add_option("--id", o.curve_id, "Curve tag: " + join(curve_tags))->required();
  curve->add_option("--points", o.points, "Grid points")->check(CLI::PositiveNumber)->capture_default_str();
  add_output(curve);

  auto* perturb = app.add_subcommand("perturb", "Perturbation campaign around a boundary family");
  perturb->add_option("--kind", o.kind, "Campaign: " + join(perturbation_kinds()))->required();
  perturb->add_option("--eps", o.eps, "Perturbation strength")->capture_default_str();
  perturb->add_option("--n", o.n, "Sample count")->required()->check(CLI::PositiveNumber);
  perturb->add_option("--seed", o.seed, "Random seed")->required();
  add_threads(perturb);
  add_output(perturb);

  auto* figure = app.add_subcommand("figure", "Write the dataset bundle of one figure (1-11)");
  figure->add_option("--id", o.fig_id, "Figure number")->required()->check(CLI::Range(1, 11));
  figure->add_option("--out", o.out, "Output directory")->capture_default_str();
  figure->add_option("--n", o.fig_n, "Samples per campaign (0: the figure's default)")->capture_default_str();
  figure->add_option("--seed", o.fig_seed, "Random seed")->capture_default_str();
  figure->add_option("--eps", o.eps, "Perturbation strength")->capture_default_str();
  add_threads(figure);

  auto* verify_cmd = app.add_subcommand("verify", "Count records outside a region");
  verify_cmd->add_option("--region", o.region, "Region tag: " + join(region_tags()))->required();
  verify_cmd->add_option("--input", o.input, "Records file (.csv or .json)")->required();
  verify_cmd->add_flag("--expect-violations", o.expect_violations,
                       "Succeed only when at least one record violates the region");
  add_output(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*measure) return do_measure(o, out);
    if (*sample) return do_sample(o, out);
    if (*curve) return do_curve(o, out);
    if (*perturb) return do_perturb(o, out);
    if (*figure) return do_figure(o, out);
    if (*verify_cmd) return do_verify(o, out);
  } catch (const std::exception& e) {
    // Bad parameters, unsupported dimensions and unreadable inputs alike.
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace permutangle::cli
