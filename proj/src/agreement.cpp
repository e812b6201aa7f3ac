#include "xra/agreement.hpp"

#include <set>

#include "xra/eval.hpp"
#include "xra/oracle.hpp"
#include "xra/synth.hpp"

namespace xra {

AgreementReport check_node_agreement(const Document& doc, const Fragment& f,
                                     std::size_t max_size) {
  AgreementReport rep;
  rep.fragment = f.name;
  Synthesizer syn(doc, f);
  const Decider& dec = syn.decider();
  SemanticPool pool(doc, f, OracleBudget{max_size, std::nullopt});
  rep.oracle_relations = pool.entries().size();

  std::set<NodeSet> domains;
  std::vector<const SemanticPool::Entry*> first_with;
  for (const auto& e : pool.entries()) {
    if (domains.insert(e.rel.domain()).second) first_with.push_back(&e);
  }

  Evaluator ev(doc);
  for (NodeId a = 0; a < doc.size(); ++a) {
    for (NodeId b = a + 1; b < doc.size(); ++b) {
      ++rep.pairs;
      const std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      if (dec.nodes_equiv(a, b)) {
        for (const auto* e : first_with) {
          if (e->rel.row_empty(a) != e->rel.row_empty(b)) {
            rep.failures.push_back(tag + " equivalent but separated by " +
                                   print_expr(e->expr));
            break;
          }
        }
        continue;
      }
      ++rep.inequivalent;
      Expr d = syn.distinguisher(a, b);
      if (auto chk = check_fragment(d, f); !chk) {
        rep.failures.push_back(tag + " distinguisher outside fragment: " + chk.reason);
        continue;
      }
      const Relation& r = ev(d);
      if (r.row_empty(a) == r.row_empty(b)) {
        rep.failures.push_back(tag + " inequivalent but distinguisher fails");
      }
    }
  }
  return rep;
}

}  // namespace xra
