// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "support.hpp"
#include "xra/agreement.hpp"
#include "xra/decide.hpp"
#include "xra/equiv.hpp"
#include "xra/eval.hpp"
#include "xra/oracle.hpp"
#include "xra/rewrite.hpp"
#include "xra/synth.hpp"

using namespace xra;
using namespace xra::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    if (failures.size() < 5) failures.push_back(std::move(msg));
  }
};

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string pair_text(NodePair p) { return format_pair(p); }

std::vector<Document> test_documents(std::uint64_t seed, std::size_t count, std::size_t max_nodes) {
  std::mt19937_64 rng(seed);
  auto docs = canonical_documents();
  for (std::size_t i = 0; i < count; ++i) docs.push_back(random_document(rng, max_nodes, 2));
  return docs;
}

// 1. Every semantic clause against the naive evaluator.
Outcome table_conformance() {
  Outcome o;
  std::mt19937_64 rng(1001);
  auto docs = test_documents(1002, 200, 12);
  Fragment full = full_algebra(3);
  std::size_t checks = 0;
  for (const auto& d : docs) {
    std::vector<Expr> exprs{ex::empty(), ex::eps(), ex::down(), ex::up()};
    for (const auto& l : {"a", "b", "x", "c"}) exprs.push_back(ex::label(l));
    // each constructor over random operands
    for (int rep = 0; rep < 3; ++rep) {
      Expr a = random_expr(rng, full, {"a", "b"}, 1 + rep * 2);
      Expr b = random_expr(rng, full, {"a", "b"}, 1 + rep);
      exprs.push_back(ex::proj1(a));
      exprs.push_back(ex::proj2(a));
      exprs.push_back(ex::inverse(a));
      for (int k = 1; k <= 3; ++k) exprs.push_back(ex::count(k, a));
      exprs.push_back(ex::compose(a, b));
      exprs.push_back(ex::unite(a, b));
      exprs.push_back(ex::intersect(a, b));
      exprs.push_back(ex::diff(a, b));
    }
    for (int rep = 0; rep < 10; ++rep) exprs.push_back(random_expr(rng, full, {"a", "b"}, 3 + rep));
    for (const auto& e : exprs) {
      ++checks;
      if (to_pairs(eval(e, d)) != naive_eval(e, d)) {
        o.fail(print_expr(e) + " on " + serialize_document(d));
      }
    }
  }
  o.detail = std::to_string(docs.size()) + " documents, " + std::to_string(checks) + " evaluations";
  return o;
}

// 2. The two-leaf example relation.
Outcome two_leaf_example() {
  Outcome o;
  Document d = d2();
  Expr e = parse_expr("up/down - self");
  Relation r = eval(e, d);
  if (to_pairs(r) != PairSet{{1, 2}, {2, 1}}) o.fail("eval gives " + format_relation(r));
  if (!definable_global(d, r, fragment_by_name("xpath(3)")).definable) o.fail("xpath(3) rejects");
  Verdict v = definable_global(d, r, fragment_by_name("core-xpath(2)"));
  if (v.definable) {
    o.fail("core-xpath(2) accepts");
  } else if (!v.counterexample || v.counterexample->first != NodePair{1, 2} ||
             v.counterexample->second != NodePair{1, 1}) {
    o.fail("counterexample " + v.explain());
  }
  auto found = find_defining(d, fragment_by_name("core-xpath(2)"), r, OracleBudget{7, {}});
  if (found) o.fail("oracle found core expression " + print_expr(*found));
  o.detail = "eval exact, xpath(3) definable, core-xpath(2) " + v.explain() + ", no core expression of size <= 7";
  return o;
}

// 3. Rewrites on random inputs.
Outcome rewrite_identities() {
  Outcome o;
  std::mt19937_64 rng(3003);
  Fragment full = full_algebra(3);
  Fragment sd = fragment_by_name("sd", 3);
  Fragment wd_pos_and = fragment_by_name("wd-pos");
  wd_pos_and.intersect = true;
  Fragment su = fragment_by_name("su");
  Fragment wd = fragment_by_name("wd", 2);
  const int n = 500;
  for (int i = 0; i < n; ++i) {
    Document d = random_document(rng, 12, 2);
    std::size_t size = 1 + static_cast<std::size_t>(i % 8);
    Expr e = random_expr(rng, full, {"a", "b"}, size);
    if (eval(eliminate_proj_inverse(e), d) != eval(e, d)) o.fail("proj-inv: " + print_expr(e));
    e = random_expr(rng, full, {"a", "b"}, size);
    if (eval(expand_counting(e), d) != eval(e, d)) o.fail("counting: " + print_expr(e));
    e = random_expr(rng, i % 2 ? sd : wd_pos_and, {"a", "b"}, size);
    Expr c = downward_core_normalize(e);
    Fragment core = i % 2 ? sd : wd_pos_and;
    core.core = true;
    if (eval(c, d) != eval(e, d)) o.fail("core-normalize: " + print_expr(e));
    if (!check_fragment(c, core).ok) o.fail("core-normalize not core: " + print_expr(c));
    Fragment dual_src = i % 3 == 0 ? su : i % 3 == 1 ? wd_pos_and : wd;
    dual_src.count_bound = 0;
    e = random_expr(rng, dual_src, {"a", "b"}, size);
    if (eval(dualize(e), d) != eval(e, d).transpose()) o.fail("dualize: " + print_expr(e));
  }
  o.detail = std::to_string(n) + " (expr, doc) pairs per rule";
  return o;
}

// 4. Node equivalence agrees with synthesized certificates and the oracle.
Outcome characterization(std::size_t max_size) {
  Outcome o;
  auto frags = registry_fragments(3);
  std::mt19937_64 rng(4004);
  std::vector<Document> docs;
  for (int i = 0; i < 100; ++i) docs.push_back(random_document(rng, 10, 2));
  std::mutex mu;
  std::size_t pairs = 0, inequivalent = 0;
  parallel_for(docs.size(), [&](std::size_t i) {
    for (const auto& f : frags) {
      AgreementReport rep = check_node_agreement(docs[i], f, max_size);
      std::lock_guard<std::mutex> lock(mu);
      pairs += rep.pairs;
      inequivalent += rep.inequivalent;
      for (const auto& msg : rep.failures) o.fail(f.name + " " + serialize_document(docs[i]) + ": " + msg);
    }
  });
  o.detail = std::to_string(docs.size()) + " documents x " + std::to_string(frags.size()) +
             " fragments, " + std::to_string(pairs) + " node pairs (" + std::to_string(inequivalent) +
             " inequivalent), oracle size " + std::to_string(max_size);
  return o;
}

bool refines(const NodeRelationIndex& fine, const NodeRelationIndex& coarse) {
  for (NodeId u = 0; u < fine.size(); ++u)
    for (NodeId v = 0; v < fine.size(); ++v)
      if (fine.holds(u, v) && !coarse.holds(u, v)) return false;
  return true;
}

// 5. Refinement laws.
Outcome refinement() {
  Outcome o;
  auto docs = test_documents(5005, 100, 12);
  for (const auto& d : docs) {
    for (int k = 1; k <= 3; ++k) {
      auto dk = node_relation(d, NodeNotion::down_k(k));
      if (!refines(node_relation(d, NodeNotion::down_k(k + 1)), dk))
        o.fail("DownK(" + std::to_string(k + 1) + ") on " + serialize_document(d));
      if (!refines(node_relation(d, NodeNotion::up_down_k(k + 1)), node_relation(d, NodeNotion::up_down_k(k))))
        o.fail("UpDownK(" + std::to_string(k + 1) + ") on " + serialize_document(d));
      for (NodeId u = 0; u < d.size(); ++u)
        for (NodeId v = 0; v < d.size(); ++v)
          if (dk.holds(u, v) && d.height(u) != d.height(v))
            o.fail("height " + std::to_string(u) + "," + std::to_string(v) + " in " + serialize_document(d));
    }
  }
  Document D3 = d3();
  auto weak = node_relation(D3, NodeNotion::weak_down());
  auto dk1 = node_relation(D3, NodeNotion::down_k(1));
  if (!refines(dk1, weak)) o.fail("DownK(1) does not refine WeakDown on D3");
  if (!weak.holds(1, 5) || dk1.holds(1, 5)) o.fail("D3 nodes 1,5 not a strict witness");
  o.detail = std::to_string(docs.size()) + " documents, k in 1..3; D3 strict at (1,5)";
  return o;
}

// Closure of seeds under p -> q for every related q.
Relation close_pairs(const Decider& dec, std::size_t n, std::vector<NodePair> work) {
  Relation r(n);
  while (!work.empty()) {
    NodePair p = work.back();
    work.pop_back();
    if (r.contains(p.first, p.second)) continue;
    r.insert(p.first, p.second);
    for (auto q : dec.related_pairs(p))
      if (!r.contains(q.first, q.second)) work.push_back(q);
  }
  return r;
}

// Independent closure test over all pairs.
bool closed(const Decider& dec, const Document& d, const Relation& r) {
  for (auto p : r.pairs())
    for (NodeId x = 0; x < d.size(); ++x)
      for (NodeId y = 0; y < d.size(); ++y)
        if (!r.contains(x, y) && dec.pair_related(p, {x, y})) return false;
  return true;
}

// 6. Closure round-trips.
Outcome bp_roundtrip() {
  Outcome o;
  std::mt19937_64 rng(6006);
  std::size_t global = 0, local = 0, rejected = 0;
  for (const auto& f : registry_fragments(3)) {
    for (int seed = 0; seed < 50; ++seed) {
      Document d = random_document(rng, 8, 2);
      Synthesizer syn(d, f);
      const Decider& dec = syn.decider();
      const PairShape shape = dec.profile().shape;
      std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(d.size() - 1));
      std::string where = f.name + " seed " + std::to_string(seed) + " " + serialize_document(d);

      std::vector<NodePair> seeds;
      for (int j = 0, tries = 0; j < 2 && tries < 100; ++tries) {
        NodePair p{node(rng), node(rng)};
        if (!shape_ok(d, shape, p)) continue;
        seeds.push_back(p);
        ++j;
      }
      Relation r = close_pairs(dec, d.size(), seeds);
      ++global;
      Verdict v = dec.definable_global(r);
      if (!v.definable) {
        o.fail("closed relation rejected: " + where + " " + v.explain());
        continue;
      }
      Expr w = syn.witness(r);
      if (eval(w, d) != r) o.fail("witness inexact: " + where);
      if (!check_fragment(w, f).ok) o.fail("witness outside fragment: " + where);

      // drop an element that some other member is related to
      for (auto q : r.pairs()) {
        bool forced = false;
        for (auto p : r.pairs()) forced = forced || (p != q && dec.pair_related(p, q));
        if (!forced) continue;
        Relation r2 = r;
        r2.erase(q.first, q.second);
        Verdict v2 = dec.definable_global(r2);
        if (v2.definable || !v2.counterexample) {
          o.fail("perturbed relation accepted: " + where + " minus " + pair_text(q));
        } else {
          auto [p1, q1] = *v2.counterexample;
          if (!r2.contains(p1.first, p1.second) || r2.contains(q1.first, q1.second) ||
              !dec.pair_related(p1, q1))
            o.fail("bad counterexample " + v2.explain() + ": " + where);
        }
        if (closed(dec, d, r2) == !v2.definable) o.fail("closure disagreement: " + where);
        ++rejected;
        break;
      }

      // local: from a node, close a node set
      NodeId v0 = node(rng);
      NodeSet ws(d.size());
      std::vector<NodeId> work;
      for (int j = 0; j < 2; ++j) {
        NodeId w0 = node(rng);
        if (shape_ok(d, shape, {v0, w0})) work.push_back(w0);
      }
      while (!work.empty()) {
        NodeId w0 = work.back();
        work.pop_back();
        if (ws.contains(w0)) continue;
        ws.insert(w0);
        for (auto q : dec.related_pairs({v0, w0}))
          if (q.first == v0 && !ws.contains(q.second)) work.push_back(q.second);
      }
      ++local;
      Verdict lv = dec.definable_local(v0, ws);
      if (!lv.definable) {
        o.fail("closed set rejected from " + std::to_string(v0) + ": " + where + " " + lv.explain());
        continue;
      }
      Expr lw = syn.local_witness(v0, ws);
      if (eval_from(lw, d, v0) != ws) o.fail("local witness inexact: " + where);
      for (auto x : ws.members()) {
        bool forced = false;
        for (auto y : ws.members()) forced = forced || (y != x && dec.pair_related({v0, y}, {v0, x}));
        if (!forced) continue;
        NodeSet ws2 = ws;
        ws2.erase(x);
        Verdict lv2 = dec.definable_local(v0, ws2);
        if (lv2.definable || !lv2.counterexample) {
          o.fail("perturbed set accepted: " + where);
        } else {
          auto [p1, q1] = *lv2.counterexample;
          if (!ws2.contains(p1.second) || ws2.contains(q1.second) || !dec.pair_related(p1, q1))
            o.fail("bad local counterexample " + lv2.explain() + ": " + where);
        }
        ++rejected;
        break;
      }
    }
  }
  o.detail = std::to_string(global) + " global and " + std::to_string(local) +
             " local closures accepted with exact witnesses, " + std::to_string(rejected) +
             " perturbations rejected";
  return o;
}

// Node sets definable from the root, found by deciding every subset.
std::set<std::vector<NodeId>> root_definable(const Document& d, const Fragment& f) {
  Decider dec(d, f);
  std::set<std::vector<NodeId>> out;
  const std::size_t n = d.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    NodeSet w(n);
    for (NodeId v = 0; v < n; ++v)
      if (mask >> v & 1U) w.insert(v);
    if (dec.definable_local(0, w).definable) out.insert(w.members());
  }
  return out;
}

// The same family as unions of root-view classes of the DownK(k) index taken
// pointwise along root paths.
std::set<std::vector<NodeId>> class_unions(const Document& d, int k) {
  auto idx = node_relation(d, NodeNotion::up_down_k(k));
  auto blocks = idx.blocks();
  std::set<std::vector<NodeId>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << blocks.size()); ++mask) {
    std::vector<NodeId> w;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (mask >> b & 1U) w.insert(w.end(), blocks[b].begin(), blocks[b].end());
    std::sort(w.begin(), w.end());
    out.insert(w);
  }
  return out;
}

// 7. Root collapse. xpath(k) can simulate counting up to 3 for every k, so the
// downward side is taken with the same effective bound max(k, 3).
Outcome root_collapse() {
  Outcome o;
  auto docs = test_documents(7007, 60, 9);
  std::size_t strict_below = 0;
  for (const auto& d : docs) {
    for (int k = 1; k <= 3; ++k) {
      auto x = root_definable(d, fragment_by_name("xpath", k));
      auto s = root_definable(d, fragment_by_name("sd", std::max(k, 3)));
      if (x != s) o.fail("xpath(" + std::to_string(k) + ") vs sd(" + std::to_string(std::max(k, 3)) + ") on " + serialize_document(d));
      if (x != class_unions(d, 3)) o.fail("class unions differ on " + serialize_document(d));
      auto sk = root_definable(d, fragment_by_name("sd", k));
      if (!std::includes(x.begin(), x.end(), sk.begin(), sk.end()))
        o.fail("sd(" + std::to_string(k) + ") not contained in xpath on " + serialize_document(d));
      if (sk != x) ++strict_below;
    }
  }
  o.detail = std::to_string(docs.size()) + " documents, k in 1..3 against sd(max(k,3)); sd(k) strictly smaller in " +
             std::to_string(strict_below) + " (doc, k) cases with k < 3";
  return o;
}

// 8. Two vs three equivalent children.
Outcome k_threshold() {
  Outcome o;
  Document d = parse_document("(r (p (c) (c)) (p (c) (c) (c)))");
  const NodeId a = 1, b = 4;
  if (!nodes_equiv_structural(d, a, b, fragment_by_name("core-xpath(2)"))) o.fail("core-xpath(2) separates");
  if (nodes_equiv_structural(d, a, b, fragment_by_name("xpath(3)"))) o.fail("xpath(3) identifies");
  auto found = find_distinguishing(d, fragment_by_name("xpath(3)"), a, b, OracleBudget{4, {}});
  std::string found_text = found ? print_expr(*found) : "none";
  std::string sim_size = "-";
  if (!found || eval_from(*found, d, a).empty() == eval_from(*found, d, b).empty())
    o.fail("oracle found no xpath(3) distinguisher");
  // the counting simulation without ch3, projections eliminated for xpath(1)
  Fragment x1 = fragment_by_name("xpath", 1);
  if (found) {
    Expr sim = eliminate_proj_inverse(expand_counting(*found), &x1);
    if (eval_from(sim, d, a).empty() == eval_from(sim, d, b).empty()) o.fail("expanded distinguisher fails");
    if (!check_fragment(sim, x1).ok) o.fail("expanded distinguisher not in xpath(1): " + print_expr(sim));
    sim_size = std::to_string(expr_size(sim));
  }
  Synthesizer syn(d, x1);
  Expr e = syn.distinguisher(a, b);
  if (eval_from(e, d, a).empty() == eval_from(e, d, b).empty()) o.fail("synthesized xpath(1) distinguisher fails");
  if (auto c = find_distinguishing(d, fragment_by_name("core-xpath(2)"), a, b, OracleBudget{7, {}}))
    o.fail("core-xpath(2) oracle found " + print_expr(*c));
  o.detail = "nodes 1,4 of " + serialize_document(d) + "; oracle: " + found_text +
             " (size " + sim_size + " once rewritten into xpath(1)); none in core-xpath(2) up to size 7";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t char_size = 6;
  if (argc > 1) char_size = std::stoul(argv[1]);
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"1 table conformance", table_conformance},
      {"2 two-leaf example", two_leaf_example},
      {"3 rewrite identities", rewrite_identities},
      {"4 characterization", [&] { return characterization(char_size); }},
      {"5 refinement laws", refinement},
      {"6 definability round-trip", bp_roundtrip},
      {"7 root collapse", root_collapse},
      {"8 k-threshold", k_threshold},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line.precision(1);
    line << std::fixed << (o.ok ? "PASS " : "FAIL ") << c.name << " (" << secs << "s): " << o.detail;
    std::cout << line.str() << std::endl;
    for (const auto& f : o.failures) std::cout << "    " << f << std::endl;
    all = all && o.ok;
  }
  return all ? 0 : 1;
}
