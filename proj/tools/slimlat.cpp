#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "slimlat/congruence.hpp"
#include "slimlat/coords.hpp"
#include "slimlat/diagram.hpp"
#include "slimlat/multifork.hpp"
#include "slimlat/render.hpp"
#include "slimlat/slimming.hpp"
#include "slimlat/trajectory.hpp"

using namespace slimlat;
using nlohmann::json;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct Out {
  bool as_json = false;
  json j = json::object();
  std::ostringstream text;

  void flush() {
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text.str();
  }
};

const char* kind_name(TrajKind k) {
  switch (k) {
    case TrajKind::Up:
      return "up";
    case TrajKind::Down:
      return "down";
    default:
      return "hat";
  }
}

Edge parse_edge(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("edge must be given as a,b");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError("bad edge '" + s + "'");
  }
}

void check_edge(const Diagram& d, Edge e) {
  if (e.bottom < 0 || e.top < 0 || e.bottom >= d.size() || e.top >= d.size() || !d.covers(e.bottom, e.top))
    throw ValidationError("[" + std::to_string(e.bottom) + "," + std::to_string(e.top) + "] is not an edge");
}

json edge_json(Edge e) { return json::array({e.bottom, e.top}); }

json blocks_json(const CongruencePartition& c) {
  std::map<ElementId, std::vector<ElementId>> blocks;
  for (int x = 0; x < static_cast<int>(c.block.size()); ++x) blocks[c.block[x]].push_back(x);
  json out = json::array();
  for (auto& [k, v] : blocks)
    if (v.size() > 1) out.push_back(v);
  return out;
}

std::string blocks_text(const CongruencePartition& c) {
  std::string s;
  for (const auto& b : blocks_json(c)) {
    s += "{";
    for (size_t i = 0; i < b.size(); ++i) s += (i ? " " : "") + std::to_string(b[i].get<int>());
    s += "}";
  }
  return s.empty() ? "{}" : s;
}

json nu_json(const NuMap& nu) {
  json j = json::object();
  for (size_t x = 0; x < nu.size(); ++x)
    if (nu[x] > 0) j[std::to_string(x)] = nu[x];
  return j;
}

NuMap nu_from_json(const std::string& text, int n) {
  NuMap nu(n, 0);
  try {
    auto j = json::parse(text);
    for (auto& [k, v] : j.items()) {
      int x = std::stoi(k);
      if (x < 0 || x >= n) throw NuDomainError("no element " + k);
      nu[x] = v.get<int>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("nu json: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("nu json: keys must be element ids");
  }
  return nu;
}

// Multifork sequence of d together with d's ids for every element of the
// replayed diagram.
struct Decomposed {
  MultiforkSequence seq;
  Replay rep;
  std::vector<ElementId> to_d;  // final id -> id in d
};

Decomposed decompose_with_map(const Diagram& d) {
  Decomposed out;
  out.seq = decompose_sequence(d);
  out.rep = replay(out.seq);
  auto sim = similarity(out.rep.final_diagram(), d);
  if (!sim) throw InconsistencyError("replayed sequence does not match the input");
  out.to_d = sim->map;
  return out;
}

// ------------------------------------------------------------- subcommands

int cmd_validate(const std::string& file, Out& o) {
  try {
    Diagram d = read_diagram_file(file);
    o.j = {{"valid", true}, {"elements", d.size()}, {"bottom", d.bottom()}, {"top", d.top()}};
    o.text << "valid lattice diagram, " << d.size() << " elements\n";
    return kTrue;
  } catch (const ValidationError& e) {
    o.j = {{"valid", false}, {"reason", e.what()}};
    o.text << "invalid: " << e.what() << "\n";
    return kFalse;
  }
}

int cmd_props(const std::string& file, Out& o) {
  Diagram d = read_diagram_file(file);
  const bool semi = is_semimodular(d);
  const bool slim = semi && is_slim(d);
  auto g = glued_sum_decompose(d);
  o.j = {{"elements", d.size()},
         {"length", d.length()},
         {"semimodular", semi},
         {"slim", slim},
         {"rectangular", semi && is_rectangular(d)},
         {"distributive", is_distributive(d)},
         {"eyes", semi ? find_eyes(d).size() : 0},
         {"glued_components", g.components.size()},
         {"join_irreducibles", join_irreducibles(d).size()}};
  if (semi) {
    o.j["left_length"] = left_length(d);
    o.j["right_length"] = right_length(d);
  }
  if (slim) o.j["jh_permutation"] = jh_permutation(d);
  for (auto& [k, v] : o.j.items()) o.text << k << ": " << v.dump() << "\n";
  return kTrue;
}

int cmd_coords(const std::string& file, bool sets, Out& o) {
  Diagram d = read_diagram_file(file);
  auto c = join_coords(d);
  json pts = json::array();
  for (int x = 0; x < d.size(); ++x) {
    pts.push_back({c[x].left, c[x].right});
    o.text << x << ": (" << c[x].left << "," << c[x].right << ")\n";
  }
  o.j["coords"] = pts;
  if (sets) {
    auto s = coord_sets(d);
    auto list = [&](const char* name, const std::vector<CoordPair>& v) {
      json a = json::array();
      o.text << name << ":";
      for (const auto& p : v) {
        a.push_back({p.left, p.right});
        o.text << " (" << p.left << "," << p.right << ")";
      }
      o.text << "\n";
      o.j[name] = a;
    };
    list("icp", s.icp);
    list("lcp", s.lcp);
    list("rcp", s.rcp);
    list("acp", s.acp);
  }
  return kTrue;
}

int cmd_extend(const std::string& file, const std::string& out, const std::string& emb_file, bool verify,
               Out& o) {
  Diagram d = read_diagram_file(file);
  auto e = rect_extension(d);
  json emb = json::object();
  for (int x = 0; x < d.size(); ++x) emb[std::to_string(x)] = e.embedding[x];
  if (!out.empty()) write_text_file(out, serialize_diagram(e.r));
  if (!emb_file.empty()) write_text_file(emb_file, emb.dump() + "\n");
  o.j = {{"elements", e.r.size()}, {"embedding", emb}};
  if (out.empty()) o.j["diagram"] = serialize_diagram(e.r);
  if (out.empty()) o.text << serialize_diagram(e.r);
  else o.text << "wrote " << out << " (" << e.r.size() << " elements)\n";
  if (!verify) return kTrue;
  auto r = verify_rect_extension(d, e.r, e.embedding);
  o.j["report"] = {{"embeds_cover_preserving", r.embeds_cover_preserving},
                   {"extension_rectangular", r.extension_rectangular},
                   {"lower_cover_condition", r.lower_cover_condition},
                   {"congruence_preserving", r.congruence_preserving}};
  o.text << "check: " << (r.all() ? "ok" : "FAILED") << "\n";
  return r.all() ? kTrue : kFalse;
}

int cmd_slim(const std::string& file, const std::string& out, const std::string& nu_file, Out& o) {
  Diagram d = read_diagram_file(file);
  auto fs = full_slimming(d);
  if (!out.empty()) write_text_file(out, serialize_diagram(fs.slim));
  if (!nu_file.empty()) write_text_file(nu_file, nu_json(fs.nu).dump() + "\n");
  o.j = {{"elements", fs.slim.size()}, {"nu", nu_json(fs.nu)}, {"kept", fs.kept}};
  if (out.empty()) {
    o.j["diagram"] = serialize_diagram(fs.slim);
    o.text << serialize_diagram(fs.slim);
  }
  o.text << "# nu " << nu_json(fs.nu).dump() << "\n";
  return kTrue;
}

int cmd_antislim(const std::string& file, const std::string& nu_file, const std::string& out, Out& o) {
  Diagram d = read_diagram_file(file);
  Diagram r = anti_slim(d, nu_from_json(read_text_file(nu_file), d.size()));
  if (!out.empty()) write_text_file(out, serialize_diagram(r));
  o.j = {{"elements", r.size()}};
  if (out.empty()) {
    o.j["diagram"] = serialize_diagram(r);
    o.text << serialize_diagram(r);
  }
  return kTrue;
}

int cmd_gen(uint64_t seed, int steps, int max_k, int max_m, int max_n, int max_el, const std::string& out,
            const std::string& seq_file, Out& o) {
  auto [d, seq] = random_slim_rectangular(seed, steps, max_k, GridBounds{max_m, max_n}, max_el);
  if (!out.empty()) write_text_file(out, serialize_diagram(d));
  if (!seq_file.empty()) write_text_file(seq_file, sequence_to_json(seq) + "\n");
  o.j = {{"elements", d.size()}, {"sequence", json::parse(sequence_to_json(seq))}};
  if (out.empty()) {
    o.j["diagram"] = serialize_diagram(d);
    o.text << "# sequence " << sequence_to_json(seq) << "\n" << serialize_diagram(d);
  }
  return kTrue;
}

int cmd_decompose(const std::string& file, Out& o) {
  Diagram d = read_diagram_file(file);
  auto seq = decompose_sequence(d);
  o.j = json::parse(sequence_to_json(seq));
  o.text << sequence_to_json(seq) << "\n";
  return kTrue;
}

int cmd_trajectories(const std::string& file, Out& o) {
  Diagram d = read_diagram_file(file);
  auto ts = trajectories(d);
  std::vector<int> yob;
  if (is_rectangular(d)) {
    auto dec = decompose_with_map(d);
    auto bt = birth_table(dec.rep);
    std::vector<int> el(d.size());
    for (int x = 0; x < dec.rep.final_diagram().size(); ++x) el[dec.to_d[x]] = bt.element_yob[x];
    for (const auto& t : ts) yob.push_back(std::max(el[t.top_edge.bottom], el[t.top_edge.top]));
  }
  json arr = json::array();
  for (size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    json edges = json::array();
    for (Edge e : t.edges) edges.push_back(edge_json(e));
    json jt = {{"edges", edges}, {"kind", kind_name(t.kind)}, {"top_edge", edge_json(t.top_edge)}};
    if (!yob.empty()) jt["yob"] = yob[i];
    arr.push_back(jt);
    o.text << i << " " << kind_name(t.kind) << " top [" << t.top_edge.bottom << "," << t.top_edge.top << "]";
    if (!yob.empty()) o.text << " yob " << yob[i];
    o.text << ":";
    for (Edge e : t.edges) o.text << " [" << e.bottom << "," << e.top << "]";
    o.text << "\n";
  }
  o.j["trajectories"] = arr;
  return kTrue;
}

int cmd_conjir(const std::string& file, Out& o) {
  Diagram d = read_diagram_file(file);
  auto p = jir_con_poset(d);
  auto edges = all_edges(d);
  json arr = json::array();
  for (size_t a = 0; a < p.elements.size(); ++a) {
    json below = json::array();
    json gen = json::array();
    for (size_t b = 0; b < p.elements.size(); ++b)
      if (a != b && p.leq[b][a]) below.push_back(b);
    for (size_t e = 0; e < edges.size(); ++e)
      if (p.edge_class[e] == static_cast<int>(a)) gen.push_back(edge_json(edges[e]));
    arr.push_back({{"blocks", blocks_json(p.elements[a])}, {"below", below}, {"edges", gen}});
    o.text << a << ": " << blocks_text(p.elements[a]) << " above";
    for (const auto& b : below) o.text << " " << b.get<int>();
    o.text << "\n";
  }
  o.j["jir_congruences"] = arr;
  return kTrue;
}

int cmd_swing(const std::string& file, const std::string& ps, const std::string& qs, Out& o) {
  Diagram d = read_diagram_file(file);
  Edge p = parse_edge(ps), q = parse_edge(qs);
  check_edge(d, p);
  check_edge(d, q);
  const bool geq = con_geq(d, p, q);
  o.j = {{"con_geq", geq}};
  if (!(is_slim(d) && is_rectangular(d))) {
    o.j["holds"] = geq;
    o.j["method"] = "congruence";
    o.text << (geq ? "true" : "false") << " (by congruence generation)\n";
    return geq ? kTrue : kFalse;
  }
  auto r = swing_decide(d, p, q);
  if (r.holds != geq) throw InconsistencyError("swing search and congruence generation disagree");
  o.j["holds"] = r.holds;
  o.j["method"] = "swing";
  o.text << (r.holds ? "true" : "false") << "\n";
  if (r.witness) {
    json chain = json::array();
    o.text << "[" << p.bottom << "," << p.top << "] up to [" << r.witness->r.bottom << "," << r.witness->r.top << "]";
    for (const auto& [k, e] : r.witness->chain) {
      const char* name = k == StepKind::Swing ? "swing" : "down";
      chain.push_back({{"step", name}, {"edge", edge_json(e)}});
      o.text << " " << name << " [" << e.bottom << "," << e.top << "]";
    }
    o.text << "\n";
    o.j["witness"] = {{"r", edge_json(r.witness->r)}, {"chain", chain}};
  }
  return r.holds ? kTrue : kFalse;
}

int cmd_render(const std::string& file, const std::string& cls, const std::string& triplet, double r,
               const std::string& out, bool labels, Out& o) {
  Diagram d = read_diagram_file(file);
  Placement p;
  if (cls == "B") {
    if (triplet.empty()) throw ParseError("class B needs --triplet");
    p = place_B(d, triplet_from_json(read_text_file(triplet)));
  } else if (cls == "C") {
    p = place_C(d, r, 0, 0);
  } else {
    p = place_D(d);
  }
  SvgOptions opt;
  opt.labels = labels;
  std::string svg = emit_svg(p, d, opt);
  if (!out.empty()) write_text_file(out, svg);
  json pts = json::array();
  for (const auto& pp : p.pos) pts.push_back({pp.a.str(), pp.b.str()});
  o.j = {{"class", cls}, {"positions", pts}, {"delta", {p.delta_re, p.delta_im}}};
  if (out.empty()) {
    o.j["svg"] = svg;
    o.text << svg;
  } else {
    o.text << "wrote " << out << "\n";
  }
  return kTrue;
}

int cmd_verify(const std::string& suite, int count, uint64_t seed, Out& o) {
  int failures = 0;
  long checked = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < count; ++i) {
    auto [d, seq] = random_slim_rectangular(seed + static_cast<uint64_t>(i), 4, 3, GridBounds{4, 4}, 80);
    if (suite == "swing") {
      auto edges = all_edges(d);
      for (Edge p : edges) {
        auto reach = swing_reachable(d, p);
        for (size_t q = 0; q < edges.size(); ++q, ++checked)
          if (reach[q] != con_geq(d, p, edges[q])) ++failures;
      }
    } else if (suite == "coloring") {
      ++checked;
      if (!coloring_check(d)) ++failures;
    } else {
      auto rep = replay(seq);
      auto ts = trajectories(rep.final_diagram());
      auto a = straj_poset_definitional(rep.final_diagram(), ts);
      auto b = straj_poset_geometric(rep, ts);
      ++checked;
      if (a.sigma_hat != b.sigma_hat || a.blocks != b.blocks) ++failures;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.j = {{"suite", suite}, {"diagrams", count}, {"checked", checked}, {"failures", failures}, {"seconds", secs}};
  o.text << suite << ": " << count << " diagrams, " << checked << " checks, " << failures << " failures\n";
  return failures == 0 ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slimlat: planar semimodular lattice diagrams"};
  app.require_subcommand(1);
  Out o;
  app.add_flag("--json", o.as_json, "JSON output");

  std::string file, out, aux, ps, qs, cls = "D", suite = "swing";
  bool flag = false;
  uint64_t seed = 1;
  int steps = 3, max_k = 3, max_m = 4, max_n = 4, max_el = 80, count = 20;
  double r = 1.0;

  auto input = [&](CLI::App* c) { c->add_option("file", file, "diagram file (.slat)")->required(); };
  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.as_json, "JSON output"); };

  auto* validate = app.add_subcommand("validate", "parse and validate a diagram");
  input(validate);
  auto* props = app.add_subcommand("props", "structural properties");
  input(props);
  auto* coords = app.add_subcommand("coords", "join-coordinates of a slim diagram");
  input(coords);
  coords->add_flag("--sets", flag, "also print the coordinate pair sets");
  auto* extend = app.add_subcommand("extend-rect", "rectangular extension");
  input(extend);
  extend->add_option("-o,--output", out, "output diagram");
  extend->add_option("--emit-embedding", aux, "write the embedding as JSON");
  extend->add_flag("--verify", flag, "check the result");
  auto* slim = app.add_subcommand("slim", "full slimming");
  input(slim);
  slim->add_option("-o,--output", out, "output diagram");
  slim->add_option("--nu", aux, "write eye counts as JSON");
  auto* antislim = app.add_subcommand("antislim", "insert eyes");
  input(antislim);
  antislim->add_option("--nu", aux, "eye counts as JSON {id: count}")->required();
  antislim->add_option("-o,--output", out, "output diagram");
  auto* gen = app.add_subcommand("gen", "random slim rectangular diagram");
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--steps", steps, "maximal number of multifork steps");
  gen->add_option("--max-k", max_k, "maximal fork size");
  gen->add_option("--max-m", max_m, "maximal left side of the grid");
  gen->add_option("--max-n", max_n, "maximal right side of the grid");
  gen->add_option("--max-elements", max_el, "size bound");
  gen->add_option("-o,--output", out, "output diagram");
  gen->add_option("--seq", aux, "write the multifork sequence as JSON");
  auto* decompose = app.add_subcommand("decompose", "multifork sequence of a slim rectangular diagram");
  input(decompose);
  auto* trajs = app.add_subcommand("trajectories", "trajectories of a slim diagram");
  input(trajs);
  auto* conjir = app.add_subcommand("conjir", "join-irreducible congruences");
  input(conjir);
  auto* swing = app.add_subcommand("swing", "is con(q) contained in con(p)");
  input(swing);
  swing->add_option("--p", ps, "edge a,b")->required();
  swing->add_option("--q", qs, "edge c,d")->required();
  auto* render = app.add_subcommand("render", "SVG drawing");
  input(render);
  render->add_option("--class", cls, "B, C or D")->check(CLI::IsMember({"B", "C", "D"}));
  render->add_option("--triplet", aux, "triplet JSON for class B");
  render->add_option("--r", r, "weight for class C")->check(CLI::PositiveNumber);
  render->add_option("-o,--output", out, "output SVG");
  render->add_flag("--labels", flag, "print element ids");
  auto* verify = app.add_subcommand("verify", "randomized self-checks");
  verify->add_option("--suite", suite, "swing, coloring or terthm")->check(CLI::IsMember({"swing", "coloring", "terthm"}));
  verify->add_option("--count", count, "number of diagrams");
  verify->add_option("--seed", seed, "first seed");
  for (auto* c : app.get_subcommands({})) json_flag(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  int rc = kError;
  try {
    if (*validate) rc = cmd_validate(file, o);
    else if (*props) rc = cmd_props(file, o);
    else if (*coords) rc = cmd_coords(file, flag, o);
    else if (*extend) rc = cmd_extend(file, out, aux, flag, o);
    else if (*slim) rc = cmd_slim(file, out, aux, o);
    else if (*antislim) rc = cmd_antislim(file, aux, out, o);
    else if (*gen) rc = cmd_gen(seed, steps, max_k, max_m, max_n, max_el, out, aux, o);
    else if (*decompose) rc = cmd_decompose(file, o);
    else if (*trajs) rc = cmd_trajectories(file, o);
    else if (*conjir) rc = cmd_conjir(file, o);
    else if (*swing) rc = cmd_swing(file, ps, qs, o);
    else if (*render) rc = cmd_render(file, cls, aux, r, out, flag, o);
    else if (*verify) rc = cmd_verify(suite, count, seed, o);
  } catch (const Error& e) {
    if (o.as_json)
      std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    else
      std::cerr << "slimlat: " << e.what() << "\n";
    return kError;
  }
  o.flush();
  return rc;
}
