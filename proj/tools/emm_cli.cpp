#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "emm/corpus.hpp"
#include "emm/embedding.hpp"
#include "emm/json_io.hpp"
#include "emm/structure.hpp"

using namespace emm;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kNone = 3, kInconclusive = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::uint64_t max_nodes = kDefaultMaxNodes;
  int threads = 1;
};

Multigraph load_graph(const std::string& spec) {
  if (const CorpusEntry* c = find_corpus_entry(spec)) return c->graph;
  if (spec == "-") return parse_edge_list(std::cin);
  std::ifstream in(spec);
  if (!in) throw InputError("no corpus graph or file named '" + spec + "'");
  try {
    return parse_edge_list(in);
  } catch (const std::exception& e) {
    throw InputError(spec + ": " + e.what());
  }
}

std::string form_text(const QuadForm& q) {
  std::ostringstream out;
  for (int i = 0; i < q.dim(); ++i) {
    out << "  [";
    for (int j = 0; j < q.dim(); ++j) out << (j ? " " : "") << q(i, j).get_str();
    out << "]\n";
  }
  return out.str();
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_info(const Options& o, const Multigraph& g) {
  const auto br = bridges(g);
  Json bridge_names = Json::array();
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (br[e]) bridge_names.push_back(g.edge_name(e));
  const auto reduced = cubic_reduction(g);
  Json blocks = Json::array();
  std::ostringstream text;
  text << "vertices " << g.num_vertices() << ", edges " << g.num_edges() << ", genus " << genus(g) << "\n";
  text << "bridges " << bridge_names.size() << "\n";
  text << "irreducible components " << reduced.size() << "\n";
  for (const ReducedComponent& r : reduced) {
    const IrreducibleComponent& c = r.component;
    Json b{{"vertices", c.graph.num_vertices()},
           {"edges", c.graph.num_edges()},
           {"genus", c.basis.genus()},
           {"loop", c.is_loop}};
    text << "  " << (c.is_loop ? "loop" : "block") << " with " << c.graph.num_vertices() << " vertices, "
         << c.graph.num_edges() << " edges, genus " << c.basis.genus();
    if (!c.is_loop) {
      const CubicModel& m = r.model;
      b["cubic_model"] = Json{{"vertices", m.graph.num_vertices()}, {"edges", m.graph.num_edges()}};
      text << "; cubic model " << m.graph.num_vertices() << " vertices, " << m.graph.num_edges() << " edges";
    }
    text << "\n";
    blocks.push_back(std::move(b));
  }
  Json j{{"schema", kJsonSchema},
         {"vertices", g.num_vertices()},
         {"edges", g.num_edges()},
         {"genus", genus(g)},
         {"bridges", std::move(bridge_names)},
         {"components", std::move(blocks)}};
  emit(o, j, text.str());
  return kOk;
}

int zemm_exit(ZemmStatus s) {
  switch (s) {
    case ZemmStatus::Exists:
      return kOk;
    case ZemmStatus::DoesNotExist:
      return kNone;
    case ZemmStatus::Inconclusive:
      return kInconclusive;
  }
  return kFail;
}

int cmd_zemm(const Options& o, const Multigraph& g) {
  const ZemmResult r = decide_zemm(g, o.max_nodes);
  std::ostringstream text;
  text << to_string(r.status) << ": " << r.summary << "\n";
  for (const ComponentZemm& c : r.components) {
    text << "  component genus " << c.genus << ": " << c.method << " (" << to_string(c.status) << ")";
    if (c.projective_tried)
      text << ", projective search " << c.projective.nodes << " nodes" << (c.projective.exhausted ? ", exhausted" : "")
           << (c.projective.edge_bound_rejected ? ", rejected by edge bound" : "");
    if (c.e_tried) text << ", E search " << c.e_stats.nodes << " nodes";
    text << "\n";
  }
  if (r.form) text << "form:\n" << form_text(*r.form);
  emit(o, to_json(r), text.str());
  return zemm_exit(r.status);
}

int cmd_qemm(const Options& o, const Multigraph& g) {
  const StrongEmmCertificate c = strong_qemm(g);
  std::map<std::string, int> cases;
  for (const QemmStep& s : c.trace) ++cases[s.case_name];
  std::ostringstream text;
  text << (c.verdict.ok ? "strong Q-emm verified" : "construction FAILED verification") << ", genus " << c.form.dim()
       << ", " << c.verdict.minimal_vectors.size() << " minimal vector pairs\n";
  text << "recursion:";
  for (const auto& [name, n] : cases) text << " " << name << "=" << n;
  text << "\nform:\n" << form_text(c.form);
  emit(o, to_json(c), text.str());
  return c.verdict.ok ? kOk : kFail;
}

// Finds a Gram matrix in a bare form file or in any emitted certificate.
const Json& find_form(const Json& j) {
  if (j.is_array() || (j.is_object() && j.contains("gram"))) return j;
  if (j.is_object()) {
    if (j.contains("form") && !j["form"].is_null()) return find_form(j["form"]);
    if (j.contains("certificate")) return find_form(j["certificate"]);
  }
  throw InputError("no quadratic form found in the JSON input");
}

int cmd_verify(const Options& o, const Multigraph& g, const std::string& path, bool z, bool strong) {
  Json j;
  try {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  QuadForm q;
  try {
    q = form_from_json(find_form(j));
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
  const HomologyBasis b = forest_basis(g);
  if (q.dim() != b.genus())
    throw InputError("form has dimension " + std::to_string(q.dim()) + " but the graph has genus " +
                     std::to_string(b.genus()));
  const EmmVerdict v = verify_emm(g, b, q, z ? EmmKind::Z : EmmKind::Q, strong);
  std::ostringstream text;
  text << (v.ok ? "ok" : "FAIL") << ": " << (strong ? "strong " : "") << (z ? "Z" : "Q") << "-emm";
  if (v.minimum) text << ", minimum " << v.minimum->get_str();
  text << ", " << v.minimal_vectors.size() << " minimal vector pairs\n";
  for (const EmmFailure& f : v.failures) {
    text << "  " << f.condition;
    if (f.edge >= 0) text << " at " << g.edge_name(f.edge);
    if (!f.witness.empty()) {
      text << " witness (";
      for (std::size_t i = 0; i < f.witness.size(); ++i) text << (i ? "," : "") << f.witness[i];
      text << ")";
    }
    text << " value " << f.value.get_str() << "\n";
  }
  Json out = to_json(v);
  out["schema"] = kJsonSchema;
  emit(o, out, text.str());
  return v.ok ? kOk : kFail;
}

int cmd_torelli(const Options& o, const Multigraph& g, FanKind fan) {
  const RegularityVerdict v = torelli_regular(g, fan, o.max_nodes);
  std::ostringstream text;
  text << to_string(fan) << ": " << (v.regular ? (*v.regular ? "regular" : "NOT regular") : "inconclusive") << "\n  "
       << v.narrative << "\n";
  emit(o, to_json(v), text.str());
  if (!v.regular) return kInconclusive;
  return *v.regular ? kOk : kNone;
}

int cmd_corpus(const Options& o, const std::string& filter) {
  Json rows = Json::array();
  std::ostringstream text;
  bool all_ok = true;
  for (const CorpusEntry& c : corpus()) {
    if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
    const int gen = genus(c.graph);
    const bool planar = planar_embed(c.graph).embedding.has_value();
    const ProjectiveResult proj = projective_embed(c.graph, o.max_nodes);
    const bool projective = planar || proj.embedding.has_value();
    const ZemmResult z = decide_zemm(c.graph, o.max_nodes);
    std::vector<std::string> mismatches;
    if (gen != c.genus) mismatches.push_back("genus");
    if (planar != c.planar) mismatches.push_back("planar");
    if (!planar && !proj.embedding && !proj.stats.exhausted && !proj.stats.edge_bound_rejected)
      mismatches.push_back("projective search inconclusive");
    else if (projective != c.projective_planar)
      mismatches.push_back("projective_planar");
    if (c.has_zemm && (z.status == ZemmStatus::Inconclusive || (z.status == ZemmStatus::Exists) != *c.has_zemm))
      mismatches.push_back("zemm");
    all_ok = all_ok && mismatches.empty();
    rows.push_back(Json{{"name", c.name},
                        {"genus", gen},
                        {"planar", planar},
                        {"projective_planar", projective},
                        {"zemm", to_string(z.status)},
                        {"mismatches", mismatches}});
    text << (mismatches.empty() ? "ok   " : "FAIL ") << c.name << ": genus " << gen << ", "
         << (planar ? "planar" : projective ? "projective planar" : "not projective planar") << ", Z-emm "
         << to_string(z.status);
    for (const auto& m : mismatches) text << " [" << m << " mismatch]";
    text << "\n";
  }
  emit(o, Json{{"schema", kJsonSchema}, {"entries", std::move(rows)}, {"ok", all_ok}}, text.str());
  return all_ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-length and emm computations on graphs"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("EMM_THREADS")) o.threads = std::max(1, std::atoi(env));
  app.add_flag("--json", o.json, "Print JSON instead of text");
  app.add_option("--seed", o.seed, "Seed for randomized choices");
  app.add_option("--max-nodes", o.max_nodes, "Search budget; exceeding it gives exit 4");
  app.add_option("--threads", o.threads, "Worker threads (default EMM_THREADS or 1)");

  std::string graph, form_path, filter, fan_name;
  bool z = false, q = false, strong = false;
  auto* info = app.add_subcommand("info", "Genus, bridges, blocks and cubic models");
  info->add_option("graph", graph, "Corpus name, edge-list file, or - for stdin")->required();
  auto* zemm = app.add_subcommand("zemm", "Decide whether a Z-emm exists");
  zemm->add_option("graph", graph)->required();
  auto* qemm = app.add_subcommand("qemm", "Construct a strong Q-emm");
  qemm->add_option("graph", graph)->required();
  auto* verify = app.add_subcommand("verify", "Check a form against the emm conditions");
  verify->add_option("graph", graph)->required();
  verify->add_option("form", form_path, "JSON form or certificate")->required();
  auto* zflag = verify->add_flag("--z", z, "Integral emm");
  verify->add_flag("--q", q, "Rational emm (default)")->excludes(zflag);
  verify->add_flag("--strong", strong, "Require minimal vectors to be coedges");
  auto* torelli = app.add_subcommand("torelli", "Regularity verdict for a fan");
  torelli->add_option("graph", graph)->required();
  torelli->add_option("--fan", fan_name, "perf, vor or cent")->required()->check(CLI::IsMember({"perf", "vor", "cent"}));
  auto* corp = app.add_subcommand("corpus", "Check the built-in graphs against their expected facts");
  corp->add_option("--filter", filter, "Only entries whose name contains this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (corp->parsed()) return cmd_corpus(o, filter);
    const Multigraph g = load_graph(graph);
    if (info->parsed()) return cmd_info(o, g);
    if (zemm->parsed()) return cmd_zemm(o, g);
    if (qemm->parsed()) return cmd_qemm(o, g);
    if (verify->parsed()) return cmd_verify(o, g, form_path, z, strong);
    if (torelli->parsed()) return cmd_torelli(o, g, *parse_fan(fan_name));
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFail;
  }
  return kFail;
}
