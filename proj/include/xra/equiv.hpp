#pragma once

#include <string>
#include <vector>

#include "xra/document.hpp"
#include "xra/relation.hpp"
#include "xra/signature.hpp"

namespace xra {

struct NodeNotion {
  enum class Kind {
    DownK,
    Upward,
    UpDownK,
    DownRelated,
    WeakDown,
    Related,
    WeakUpDown,
    UpRelated,
  };
  Kind kind = Kind::DownK;
  int k = 1;  // DownK / UpDownK only

  static NodeNotion down_k(int k) { return {Kind::DownK, k}; }
  static NodeNotion upward() { return {Kind::Upward, 0}; }
  static NodeNotion up_down_k(int k) { return {Kind::UpDownK, k}; }
  static NodeNotion down_related() { return {Kind::DownRelated, 0}; }
  static NodeNotion weak_down() { return {Kind::WeakDown, 0}; }
  static NodeNotion related() { return {Kind::Related, 0}; }
  static NodeNotion weak_up_down() { return {Kind::WeakUpDown, 0}; }
  static NodeNotion up_related() { return {Kind::UpRelated, 0}; }

  bool is_preorder() const {
    return kind == Kind::DownRelated || kind == Kind::Related ||
           kind == Kind::UpRelated;
  }
  std::string name() const;
  bool operator==(const NodeNotion&) const = default;
};

class NodeRelationIndex {
 public:
  enum class Shape { Partition, Preorder };

  static NodeRelationIndex partition(NodeNotion n, std::vector<NodeId> block);
  static NodeRelationIndex preorder(NodeNotion n, Relation m);

  const NodeNotion& notion() const { return notion_; }
  Shape shape() const { return shape_; }
  std::size_t size() const { return size_; }

  // Partition: same block. Preorder: u <= v.
  bool holds(NodeId u, NodeId v) const {
    return shape_ == Shape::Partition ? block_[u] == block_[v]
                                      : matrix_.contains(u, v);
  }
  // Canonical block id (smallest member); partitions only.
  NodeId block_of(NodeId v) const { return block_.at(v); }
  std::vector<std::vector<NodeId>> blocks() const;
  // {u : holds(v, u)}
  NodeSet upset(NodeId v) const;
  Relation as_relation() const;

 private:
  NodeNotion notion_;
  Shape shape_ = Shape::Partition;
  std::size_t size_ = 0;
  std::vector<NodeId> block_;
  Relation matrix_;
};

NodeRelationIndex node_relation(const Document& doc, NodeNotion notion);

// Simulation-style relation by deleting pairs |V| rounds from the full
// equal-label relation without the change-driven worklist; cross-check only.
Relation down_related_bounded(const Document& doc);

// "{0} {1,4} {2,3,5} {6}" for partitions, "u <= v" lines for preorders.
std::string format_index(const NodeRelationIndex& idx);

enum class PairMode { Subsumes, Congruent };

struct PairTheta {
  NodeNotion theta;
  PairMode mode = PairMode::Congruent;
};

// Pair-level relation check against a precomputed node index.
bool pair_related(const Document& doc, const NodeRelationIndex& theta,
                  PairMode mode, NodePair p1, NodePair p2);
bool pair_related(const Document& doc, const PairTheta& theta, NodePair p1,
                  NodePair p2);

}  // namespace xra
