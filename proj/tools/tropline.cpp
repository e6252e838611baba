#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tropline/counting.hpp"
#include "tropline/ensembles.hpp"
#include "tropline/errors.hpp"
#include "tropline/io.hpp"
#include "tropline/newick.hpp"
#include "tropline/nni.hpp"
#include "tropline/random.hpp"
#include "tropline/segment.hpp"

using namespace tropline;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kTheorem = 3 };

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "text";
  bool decimal = false;
};

// stdout when no --out was given.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(g.out, text);
  }
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

UltraVector load(const std::string& path) { return parse_metric(read_text_file(path)); }

int cmd_validate(const Globals& g, const std::string& path) {
  const UltraVector u = load(path);
  nlohmann::ordered_json j;
  j["n"] = u.n();
  std::ostringstream text;
  text << "n: " << u.n() << "\n";
  bool ok = true;
  if (u.n() < 3) {
    ok = false;
    j["ultrametric"] = nullptr;
    text << "ultrametric: undetermined (needs n >= 3)\n";
  } else if (const auto bad = find_three_point_violation(u)) {
    ok = false;
    j["ultrametric"] = false;
    j["triple"] = *bad;
    text << "ultrametric: no; triple (" << (*bad)[0] << "," << (*bad)[1] << "," << (*bad)[2] << ")\n";
  } else {
    j["ultrametric"] = true;
    text << "ultrametric: yes\n";
  }
  if (u.n() >= 4) {
    if (const auto bad = find_four_point_violation(u)) {
      j["four_point"] = false;
      j["quadruple"] = *bad;
      text << "four-point: no; quadruple (" << (*bad)[0] << "," << (*bad)[1] << "," << (*bad)[2] << ","
           << (*bad)[3] << ")\n";
    } else {
      j["four_point"] = true;
      text << "four-point: yes\n";
    }
  }
  emit(g, g.format == "json" ? dump(j) : text.str());
  return ok ? kOk : kFailure;
}

int cmd_segment(const Globals& g, const std::string& pu, const std::string& pv) {
  const TropicalSegment seg = tropical_segment(load(pu), load(pv));
  emit(g, dump(segment_json(seg, g.decimal)));
  return kOk;
}

int cmd_classify(const Globals& g, const std::string& pu, const std::string& pv) {
  const TropicalSegment seg = tropical_segment(load(pu), load(pv));
  if (g.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& p : seg.points) {
      rows.push_back({{"lambda", scalar_json(p.lambda, g.decimal)},
                      {"class", p.cls ? nlohmann::ordered_json(std::string(to_string(*p.cls))) : nlohmann::ordered_json(nullptr)},
                      {"newick", write_newick(p.tree)}});
    }
    emit(g, dump({{"generic_pair", seg.generic_pair}, {"turning_points", rows}}));
    return kOk;
  }
  std::ostringstream out;
  if (!seg.generic_pair) out << "# non-generic pair; classification trichotomy not guaranteed\n";
  for (const auto& p : seg.points) {
    out << p.lambda.str() << '\t' << (p.cls ? to_string(*p.cls) : std::string_view("unclassified")) << '\t'
        << write_newick(p.tree) << '\n';
  }
  emit(g, out.str());
  return kOk;
}

int cmd_tnni(const Globals& g, const std::string& pu, const std::string& pv) {
  const TropicalSegment seg = tropical_segment(load(pu), load(pv));
  const int tnni = tropical_nni_number(seg);
  const int ti = tropical_interchange_number(seg.tree_u, seg.tree_v);
  std::optional<int> distance;
  const Topology a = topology_of(seg.tree_u);
  const Topology b = topology_of(seg.tree_v);
  if (a.n() <= kMaxExactNniLeaves) distance = nni_distance_exact(a, b);
  if (g.format == "json") {
    emit(g, dump({{"tropical_nni", tnni},
                  {"interchange", ti},
                  {"nni_distance", distance ? nlohmann::ordered_json(*distance) : nlohmann::ordered_json(nullptr)}}));
  } else {
    std::ostringstream out;
    out << "tropical_nni: " << tnni << "\ninterchange: " << ti << "\nnni_distance: ";
    if (distance) {
      out << *distance << '\n';
    } else {
      out << "n/a (n > " << kMaxExactNniLeaves << ")\n";
    }
    emit(g, out.str());
  }
  return kOk;
}

int emit_pair(const Globals& g, const UltraVector& u, const UltraVector& v, bool newick, nlohmann::ordered_json extra) {
  auto render = [newick](const UltraVector& x) {
    return newick ? write_newick(ultrametric_to_tree(x)) + "\n" : write_ultra_vector(x);
  };
  if (g.format == "json") {
    extra["u"] = vector_json(u, g.decimal);
    extra["v"] = vector_json(v, g.decimal);
    extra["newick_u"] = write_newick(ultrametric_to_tree(u));
    extra["newick_v"] = write_newick(ultrametric_to_tree(v));
    emit(g, dump(extra));
  } else if (g.out.empty()) {
    std::cout << render(u) << '\n' << render(v);
  } else {
    write_text_file(g.out + "_u.txt", render(u));
    write_text_file(g.out + "_v.txt", render(v));
  }
  return kOk;
}

int cmd_count(const Globals& g, int nmax) {
  constexpr int kEnumerable = 10;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream csv;
  csv << "n,planar_formula,planar_enumerated,marked_formula,marked_enumerated,ab_cells,ab_mismatches\n";
  bool all_match = true;
  for (int n = 1; n <= nmax; ++n) {
    const mpz_class planar = count_planar(n);
    const mpz_class marked = count_planar_marked(n);
    nlohmann::ordered_json row{{"n", n}, {"planar_formula", planar.get_str()}, {"marked_formula", marked.get_str()}};
    csv << n << ',' << planar.get_str() << ',';
    if (n <= kEnumerable) {
      const PlanarCensus c = planar_census(n);
      int cells = 0;
      int mismatches = 0;
      for (int a = 1; a < n; ++a) {
        for (int b = 1; a + b <= n; ++b) {
          ++cells;
          if (count_planar_marked_ab(n, a, b) != c.by_ab[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) {
            ++mismatches;
          }
        }
      }
      all_match = all_match && mismatches == 0 && planar == c.trees && marked == c.marked;
      row["planar_enumerated"] = c.trees;
      row["marked_enumerated"] = c.marked;
      row["ab_cells"] = cells;
      row["ab_mismatches"] = mismatches;
      csv << c.trees << ',' << marked.get_str() << ',' << c.marked << ',' << cells << ',' << mismatches << '\n';
    } else {
      csv << ',' << marked.get_str() << ",,,\n";
    }
    rows.push_back(std::move(row));
  }
  emit(g, g.format == "json" ? dump(rows) : csv.str());
  return all_match ? kOk : kFailure;
}

std::string sidecar_path(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return out.substr(0, dot) + ".json";
  return out + ".json";
}

int cmd_experiment(const Globals& g, const std::vector<int>& ns, int trials, bool timing) {
  const SeededStream stream(g.seed);
  std::vector<ExperimentReport> reports;
  for (int n : ns) {
    ExperimentReport r = expected_pi_monte_carlo(n, trials, stream);
    if (!timing) r.seconds = 0;
    std::cerr << "n=" << n << " mean=" << r.mean_pi << " bound=" << r.bound << '\n';
    reports.push_back(std::move(r));
  }
  nlohmann::ordered_json side{{"seed", g.seed}, {"trials", trials}, {"rows", experiment_json(reports)}};
  if (g.format == "json") {
    emit(g, dump(side));
  } else {
    emit(g, experiment_csv(reports));
    if (!g.out.empty()) write_text_file(sidecar_path(g.out), dump(side));
  }
  bool within = true;
  for (const auto& r : reports) within = within && r.mean_pi <= r.bound;
  return within ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical line segments between equidistant trees"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for random subcommands")->capture_default_str();
  app.add_option("--out", g.out, "Output file (prefix for pair outputs)");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_flag("--decimal", g.decimal, "Add rounded decimal values next to exact rationals");

  std::string path_u;
  std::string path_v;
  int n = 0;
  bool newick = false;
  int trials = 2000;
  bool timing = false;
  std::vector<int> ns;
  std::int64_t max_height = 0;

  auto* validate = app.add_subcommand("validate", "Three- and four-point checks on a vector or Newick file");
  validate->add_option("input", path_u)->required()->check(CLI::ExistingFile);
  auto* segment = app.add_subcommand("segment", "Tropical segment report as JSON");
  auto* classify = app.add_subcommand("classify", "Class of every turning point");
  auto* tnni = app.add_subcommand("tnni", "Tropical NNI number and interchange number");
  for (auto* sub : {segment, classify, tnni}) {
    sub->add_option("u", path_u)->required()->check(CLI::ExistingFile);
    sub->add_option("v", path_v)->required()->check(CLI::ExistingFile);
  }
  auto* worst = app.add_subcommand("worst-case", "Worst-case caterpillar pair");
  worst->add_option("n", n)->required()->check(CLI::Range(3, kMaxLeaves));
  auto* count = app.add_subcommand("count", "Planar tree counts, formula against enumeration");
  count->add_option("nmax", n)->required()->check(CLI::Range(1, 2000));
  auto* random_pair = app.add_subcommand("random-pair", "Random generic pair with uniform topologies");
  random_pair->add_option("n", n)->required()->check(CLI::Range(3, kMaxLeaves));
  random_pair->add_option("--max-height", max_height, "Height range (default n^6)");
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo estimate of E|essential pairs| against the bound");
  experiment->add_option("n", ns)->required()->check(CLI::Range(3, kMaxLeaves));
  experiment->add_option("--trials", trials)->check(CLI::Range(30, 100000000))->capture_default_str();
  experiment->add_flag("--timing", timing, "Record wall time (output is then not byte-reproducible)");
  for (auto* sub : {worst, random_pair}) sub->add_flag("--newick", newick, "Write Newick instead of vectors");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(g, path_u);
    if (*segment) return cmd_segment(g, path_u, path_v);
    if (*classify) return cmd_classify(g, path_u, path_v);
    if (*tnni) return cmd_tnni(g, path_u, path_v);
    if (*worst) {
      const auto [u, v] = worst_case_pair(n);
      return emit_pair(g, u, v, newick, {{"n", n}});
    }
    if (*count) return cmd_count(g, n);
    if (*random_pair) {
      SeededStream stream(g.seed);
      const auto pair = max_height > 0 ? sample_generic_pair(n, stream, max_height) : sample_generic_pair(n, stream);
      return emit_pair(g, tree_to_ultrametric(pair.first), tree_to_ultrametric(pair.second), newick,
                       {{"n", n}, {"seed", g.seed}, {"height_draws", pair.draws}});
    }
    if (*experiment) return cmd_experiment(g, ns, trials, timing);
  } catch (const TheoremViolation& e) {
    std::cerr << "theorem violation: " << e.what() << '\n';
    return kTheorem;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kFailure;
  } catch (const NotUltrametric& e) {
    std::cerr << "not an ultrametric: " << e.what() << '\n';
    return kFailure;
  } catch (const InvalidTree& e) {
    std::cerr << "invalid tree: " << e.what() << '\n';
    return kFailure;
  } catch (const DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << '\n';
    return kFailure;
  } catch (const NonGenericPair& e) {
    std::cerr << "non-generic pair: " << e.what() << '\n';
    return kFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
