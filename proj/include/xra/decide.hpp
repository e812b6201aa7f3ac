#pragma once

#include <map>
#include <optional>
#include <string>

#include "xra/document.hpp"
#include "xra/equiv.hpp"
#include "xra/expr.hpp"
#include "xra/relation.hpp"

namespace xra {

enum class PairShape { Any, Descendant, Ancestor };

struct FragmentProfile {
  Fragment fragment;
  // Notion characterizing expression equivalence of nodes.
  NodeNotion node_notion;
  // Preorder characterizing the one-directional test (positive fragments).
  std::optional<NodeNotion> directional;
  // Node relation and mode used for pair closure.
  NodeNotion pair_theta;
  PairMode pair_mode = PairMode::Congruent;
  PairShape shape = PairShape::Any;
};

FragmentProfile fragment_profile(const Fragment& f);

bool shape_ok(const Document& doc, PairShape shape, NodePair p);

struct Verdict {
  bool definable = true;
  // p in R, q outside R, p related to q.
  std::optional<std::pair<NodePair, NodePair>> counterexample;
  std::optional<NodePair> shape_violation;

  // "(1,2) ~> (1,1)" or "(2,1) violates shape"; empty when definable.
  std::string explain() const;
};

// Structural checks for one document and fragment; caches node indexes.
class Decider {
 public:
  Decider(const Document& doc, const Fragment& f);

  const FragmentProfile& profile() const { return profile_; }
  const NodeRelationIndex& node_index() const { return node_index_; }
  const NodeRelationIndex& pair_index() const { return pair_index_; }

  bool nodes_equiv(NodeId v1, NodeId v2) const;
  // v1 >=exp v2; positive fragments only.
  bool nodes_geq(NodeId v1, NodeId v2) const;

  bool pair_related(NodePair p, NodePair q) const;
  // Pairs q with p related to q, lexicographic order.
  std::vector<NodePair> related_pairs(NodePair p) const;

  Verdict definable_global(const Relation& r) const;
  Verdict definable_global_naive(const Relation& r) const;
  Verdict definable_local(NodeId v, const NodeSet& w) const;

 private:
  const Document& doc_;
  FragmentProfile profile_;
  NodeRelationIndex node_index_;
  NodeRelationIndex pair_index_;
  std::optional<NodeRelationIndex> directional_index_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<NodePair>> updown_;
};

bool nodes_equiv_structural(const Document& doc, NodeId v1, NodeId v2,
                            const Fragment& f);
bool nodes_geq_structural(const Document& doc, NodeId v1, NodeId v2,
                          const Fragment& f);
Verdict definable_global(const Document& doc, const Relation& r, const Fragment& f);
Verdict definable_local(const Document& doc, NodeId v, const NodeSet& w,
                        const Fragment& f);

}  // namespace xra
