#include "xra/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xra/agreement.hpp"
#include "xra/decide.hpp"
#include "xra/equiv.hpp"
#include "xra/eval.hpp"
#include "xra/oracle.hpp"
#include "xra/rewrite.hpp"
#include "xra/synth.hpp"

namespace xra {

namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string doc;
  std::string expr;
  std::optional<NodeId> from;
  std::string notion = "down-k";
  std::optional<int> k;
  std::string fragment;
  std::string relation;
  std::string set;
  std::vector<NodeId> nodes;
  std::size_t max_size = 5;
  std::string rule;
  bool witness = false;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load_document(const std::string& source) {
  if (source.empty()) throw UsageError("--doc is required");
  if (auto b = builtin_document(source)) return parse_document(*b);
  if (source.find('(') != std::string::npos) return parse_document(source);
  return parse_document(read_file(source));
}

std::vector<NodeId> parse_ids(const std::string& text) {
  std::vector<NodeId> ids;
  std::string token;
  std::stringstream ss(text);
  while (ss >> token) {
    std::stringstream parts(token);
    std::string part;
    while (std::getline(parts, part, ',')) {
      if (part.empty()) continue;
      std::size_t used = 0;
      unsigned long v = std::stoul(part, &used);
      if (used != part.size()) throw UsageError("bad node id '" + part + "'");
      ids.push_back(static_cast<NodeId>(v));
    }
  }
  return ids;
}

NodeSet load_set(const Document& doc, const std::string& text) {
  NodeSet s(doc.size());
  for (NodeId v : parse_ids(text)) {
    if (v >= doc.size()) throw UsageError("node " + std::to_string(v) + " out of range");
    s.insert(v);
  }
  return s;
}

// "u v" pairs separated by commas or newlines, inline or from a file.
Relation load_relation(const Document& doc, const std::string& source) {
  std::string text = source;
  if (!source.empty() && std::filesystem::is_regular_file(source)) text = read_file(source);
  for (char& c : text) {
    if (c == ',') c = '\n';
  }
  std::vector<NodePair> pairs;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::vector<unsigned long> nums;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      nums.push_back(std::stoul(tok, &used));
      if (used != tok.size()) throw UsageError("bad relation token '" + tok + "'");
    }
    if (nums.empty()) continue;
    if (nums.size() != 2) throw UsageError("relation lines need exactly two ids");
    pairs.emplace_back(static_cast<NodeId>(nums[0]), static_cast<NodeId>(nums[1]));
  }
  return Relation::from_pairs(doc.size(), pairs);
}

NodeNotion parse_notion(const std::string& name, std::optional<int> k) {
  const int kk = k.value_or(1);
  if (name == "down-k") return NodeNotion::down_k(kk);
  if (name == "up") return NodeNotion::upward();
  if (name == "k") return NodeNotion::up_down_k(kk);
  if (name == "down-rel") return NodeNotion::down_related();
  if (name == "rel") return NodeNotion::related();
  if (name == "weak-down") return NodeNotion::weak_down();
  if (name == "weak") return NodeNotion::weak_up_down();
  if (name == "up-rel") return NodeNotion::up_related();
  throw UsageError("unknown notion '" + name + "'");
}

Fragment load_fragment(const Options& o) {
  if (o.fragment.empty()) throw UsageError("--fragment is required");
  return fragment_by_name(o.fragment, o.k);
}

json pairs_json(const Relation& r) {
  json arr = json::array();
  for (auto [u, v] : r.pairs()) arr.push_back({u, v});
  return arr;
}

json verdict_json(const Verdict& v) {
  json j{{"definable", v.definable}};
  if (v.counterexample) {
    j["counterexample"] = {{v.counterexample->first.first, v.counterexample->first.second},
                           {v.counterexample->second.first, v.counterexample->second.second}};
  }
  if (v.shape_violation) {
    j["shape_violation"] = {v.shape_violation->first, v.shape_violation->second};
  }
  return j;
}

NodeId require_node(const Document& doc, std::optional<NodeId> v, const char* flag) {
  if (!v) throw UsageError(std::string(flag) + " is required");
  if (*v >= doc.size()) throw UsageError("node " + std::to_string(*v) + " out of range");
  return *v;
}

std::pair<NodeId, NodeId> two_nodes(const Document& doc, const Options& o) {
  if (o.nodes.size() != 2) throw UsageError("give exactly two --node values");
  for (NodeId v : o.nodes) {
    if (v >= doc.size()) throw UsageError("node " + std::to_string(v) + " out of range");
  }
  return {o.nodes[0], o.nodes[1]};
}

int cmd_eval(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  Expr e = parse_expr(o.expr);
  Relation r = eval(e, doc);
  if (o.from) {
    NodeSet s = r.image(require_node(doc, o.from, "--from"));
    if (o.json) out << json{{"nodes", s.members()}}.dump() << '\n';
    else out << format_nodeset(s) << '\n';
    return 0;
  }
  if (o.json) out << json{{"pairs", pairs_json(r)}}.dump() << '\n';
  else out << format_relation(r);
  return 0;
}

int cmd_classes(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  NodeRelationIndex idx = node_relation(doc, parse_notion(o.notion, o.k));
  if (o.json) {
    json j{{"notion", idx.notion().name()}};
    if (idx.shape() == NodeRelationIndex::Shape::Partition) {
      j["blocks"] = idx.blocks();
    } else {
      j["preorder"] = pairs_json(idx.as_relation());
    }
    out << j.dump() << '\n';
  } else {
    std::string text = format_index(idx);
    out << text;
    if (idx.shape() == NodeRelationIndex::Shape::Partition) out << '\n';
  }
  return 0;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  Decider d(doc, load_fragment(o));
  auto [a, b] = two_nodes(doc, o);
  bool eq = d.nodes_equiv(a, b);
  std::optional<std::pair<bool, bool>> dir;
  if (d.profile().directional) dir = std::make_pair(d.nodes_geq(a, b), d.nodes_geq(b, a));
  if (o.json) {
    json j{{"equivalent", eq}, {"notion", d.profile().node_notion.name()}};
    if (dir) {
      j["geq"] = dir->first;
      j["leq"] = dir->second;
    }
    out << j.dump() << '\n';
  } else {
    out << (eq ? "equivalent" : "not equivalent") << '\n';
    if (dir) {
      out << a << " >= " << b << ": " << (dir->first ? "yes" : "no") << '\n';
      out << b << " >= " << a << ": " << (dir->second ? "yes" : "no") << '\n';
    }
  }
  return eq ? 0 : 1;
}

int report_verdict(const Verdict& v, std::optional<Expr> witness, const Options& o,
                   std::ostream& out) {
  if (o.json) {
    json j = verdict_json(v);
    if (witness) j["witness"] = print_expr(*witness);
    out << j.dump() << '\n';
  } else if (v.definable) {
    out << "definable\n";
    if (witness) out << print_expr(*witness) << '\n';
  } else {
    out << "not definable\n" << v.explain() << '\n';
  }
  return v.definable ? 0 : 1;
}

int cmd_definable(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  Fragment f = load_fragment(o);
  Relation r = load_relation(doc, o.relation);
  Synthesizer syn(doc, f);
  Verdict v = syn.decider().definable_global(r);
  std::optional<Expr> w;
  if (v.definable && o.witness) w = syn.witness(r);
  return report_verdict(v, w, o, out);
}

int cmd_definable_local(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  Fragment f = load_fragment(o);
  std::optional<NodeId> from = o.from;
  if (!from && o.nodes.size() == 1) from = o.nodes[0];
  NodeId v = require_node(doc, from, "--from");
  NodeSet w = load_set(doc, o.set);
  Synthesizer syn(doc, f);
  Verdict verdict = syn.decider().definable_local(v, w);
  std::optional<Expr> e;
  if (verdict.definable && o.witness) e = syn.local_witness(v, w);
  return report_verdict(verdict, e, o, out);
}

int cmd_distinguish(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  Fragment f = load_fragment(o);
  auto [a, b] = two_nodes(doc, o);
  auto e = find_distinguishing(doc, f, a, b, OracleBudget{o.max_size, std::nullopt});
  std::optional<Expr> cert;
  if (o.witness && !Decider(doc, f).nodes_equiv(a, b)) {
    cert = Synthesizer(doc, f).distinguisher(a, b);
  }
  if (o.json) {
    json j{{"expr", e ? json(print_expr(*e)) : json(nullptr)}};
    if (cert) j["certificate"] = print_expr(*cert);
    out << j.dump() << '\n';
  } else {
    out << (e ? print_expr(*e) : "none") << '\n';
    if (cert) out << print_expr(*cert) << '\n';
  }
  return 0;
}

int cmd_synthesize(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  Fragment f = load_fragment(o);
  Synthesizer syn(doc, f);
  Expr e;
  if (!o.relation.empty()) {
    Relation r = load_relation(doc, o.relation);
    Verdict v = syn.decider().definable_global(r);
    if (!v.definable) return report_verdict(v, std::nullopt, o, out);
    e = syn.witness(r);
  } else if (!o.set.empty()) {
    NodeId v = require_node(doc, o.from, "--from");
    NodeSet w = load_set(doc, o.set);
    Verdict verdict = syn.decider().definable_local(v, w);
    if (!verdict.definable) return report_verdict(verdict, std::nullopt, o, out);
    e = syn.local_witness(v, w);
  } else if (o.nodes.size() == 1) {
    e = syn.node_predicate(require_node(doc, o.nodes[0], "--node"));
  } else {
    throw UsageError("synthesize needs --relation, --from with --set, or --node");
  }
  if (o.json) out << json{{"expr", print_expr(e)}}.dump() << '\n';
  else out << print_expr(e) << '\n';
  return 0;
}

int cmd_rewrite(const Options& o, std::ostream& out) {
  Expr e = parse_expr(o.expr);
  Expr r;
  if (o.rule == "proj-inv") {
    if (o.fragment.empty()) {
      r = eliminate_proj_inverse(e);
    } else {
      Fragment f = load_fragment(o);
      r = eliminate_proj_inverse(e, &f);
    }
  } else if (o.rule == "counting") {
    r = expand_counting(e);
  } else if (o.rule == "core-normalize") {
    r = downward_core_normalize(e);
  } else if (o.rule == "dualize") {
    r = dualize(e);
  } else {
    throw UsageError("unknown rule '" + o.rule + "'");
  }
  if (o.json) out << json{{"expr", print_expr(r)}}.dump() << '\n';
  else out << print_expr(r) << '\n';
  return 0;
}

int cmd_oracle_check(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  std::vector<Fragment> frags;
  if (o.fragment.empty()) {
    frags = registry_fragments(3);
  } else {
    frags.push_back(load_fragment(o));
  }
  bool all = true;
  json arr = json::array();
  for (const auto& f : frags) {
    AgreementReport rep = check_node_agreement(doc, f, o.max_size);
    all = all && rep.ok();
    if (o.json) {
      arr.push_back({{"fragment", rep.fragment},
                     {"pass", rep.ok()},
                     {"pairs", rep.pairs},
                     {"inequivalent", rep.inequivalent},
                     {"failures", rep.failures}});
    } else {
      out << (rep.ok() ? "PASS " : "FAIL ") << rep.fragment << " pairs=" << rep.pairs
          << " inequivalent=" << rep.inequivalent
          << " relations=" << rep.oracle_relations << '\n';
      for (const auto& msg : rep.failures) out << "  " << msg << '\n';
    }
  }
  if (o.json) out << arr.dump() << '\n';
  return all ? 0 : 1;
}

int cmd_oracle_define(const Options& o, std::ostream& out) {
  Document doc = load_document(o.doc);
  Fragment f = load_fragment(o);
  Relation r = load_relation(doc, o.relation);
  auto e = find_defining(doc, f, r, OracleBudget{o.max_size, std::nullopt});
  if (o.json) {
    out << json{{"expr", e ? json(print_expr(*e)) : json(nullptr)}}.dump() << '\n';
  } else {
    out << (e ? print_expr(*e) : "none") << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relation-algebra XPath fragments over unordered labeled trees", "xra"};
  app.require_subcommand(1);
  Options o;

  auto doc = [&](CLI::App* c) { c->add_option("--doc", o.doc, "document file, inline tree, or T1/D2/D3")->required(); };
  auto frag = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--fragment", o.fragment, "fragment registry key");
    if (required) opt->required();
    c->add_option("--k", o.k, "counting bound");
  };
  auto fmt = [&](CLI::App* c) { c->add_flag("--json", o.json, "JSON output"); };

  auto* ev = app.add_subcommand("eval", "evaluate an expression");
  doc(ev);
  ev->add_option("--expr", o.expr)->required();
  ev->add_option("--from", o.from, "print the image of one node");
  fmt(ev);

  auto* cl = app.add_subcommand("classes", "node equivalence classes or preorder");
  doc(cl);
  cl->add_option("--notion", o.notion)
      ->check(CLI::IsMember({"down-k", "up", "k", "down-rel", "rel", "weak-down", "weak", "up-rel"}));
  cl->add_option("--k", o.k);
  fmt(cl);

  auto* eq = app.add_subcommand("equiv", "structural node equivalence");
  doc(eq);
  frag(eq, true);
  eq->add_option("--node", o.nodes)->required()->expected(1, 2);
  fmt(eq);

  auto* de = app.add_subcommand("definable", "global definability of a relation");
  doc(de);
  frag(de, true);
  de->add_option("--relation", o.relation)->required();
  de->add_flag("--witness", o.witness, "print a defining expression");
  fmt(de);

  auto* dl = app.add_subcommand("definable-local", "definability of a node set from a node");
  doc(dl);
  frag(dl, true);
  dl->add_option("--from", o.from);
  dl->add_option("--node", o.nodes);
  dl->add_option("--set", o.set)->required();
  dl->add_flag("--witness", o.witness);
  fmt(dl);

  auto* di = app.add_subcommand("distinguish", "smallest distinguishing expression");
  doc(di);
  frag(di, true);
  di->add_option("--node", o.nodes)->required()->expected(1, 2);
  di->add_option("--max-size", o.max_size);
  di->add_flag("--witness", o.witness, "also print the synthesized distinguisher");
  fmt(di);

  auto* sy = app.add_subcommand("synthesize", "witness or node predicate synthesis");
  doc(sy);
  frag(sy, true);
  sy->add_option("--relation", o.relation);
  sy->add_option("--from", o.from);
  sy->add_option("--set", o.set);
  sy->add_option("--node", o.nodes);
  fmt(sy);

  auto* rw = app.add_subcommand("rewrite", "apply a rewrite rule");
  rw->add_option("--rule", o.rule)
      ->required()
      ->check(CLI::IsMember({"proj-inv", "counting", "core-normalize", "dualize"}));
  rw->add_option("--expr", o.expr)->required();
  frag(rw, false);
  fmt(rw);

  auto* oc = app.add_subcommand("oracle-check", "structural vs. enumerated agreement");
  doc(oc);
  frag(oc, false);
  oc->add_option("--max-size", o.max_size);
  fmt(oc);

  auto* od = app.add_subcommand("oracle-define", "smallest expression defining a relation");
  doc(od);
  frag(od, true);
  od->add_option("--relation", o.relation)->required();
  od->add_option("--max-size", o.max_size);
  fmt(od);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (ev->parsed()) return cmd_eval(o, out);
    if (cl->parsed()) return cmd_classes(o, out);
    if (eq->parsed()) return cmd_equiv(o, out);
    if (de->parsed()) return cmd_definable(o, out);
    if (dl->parsed()) return cmd_definable_local(o, out);
    if (di->parsed()) return cmd_distinguish(o, out);
    if (sy->parsed()) return cmd_synthesize(o, out);
    if (rw->parsed()) return cmd_rewrite(o, out);
    if (oc->parsed()) return cmd_oracle_check(o, out);
    if (od->parsed()) return cmd_oracle_define(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace xra
