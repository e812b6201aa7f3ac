#pragma once

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "xra/document.hpp"
#include "xra/expr.hpp"
#include "xra/relation.hpp"

namespace xra::testing {

using PairSet = std::set<std::pair<NodeId, NodeId>>;

Document t1();
Document d2();
Document d3();
std::vector<Document> canonical_documents();

// Uniform random parent choice, relabeled into preorder; 1..max_nodes nodes.
Document random_document(std::mt19937_64& rng, std::size_t max_nodes,
                         std::size_t num_labels);

// Same tree with children emitted in a random order; perm[old] = new id.
std::pair<Document, std::vector<NodeId>> shuffle_document(const Document& doc,
                                                          std::mt19937_64& rng);

// Random expression of the given size using only operations of f.
Expr random_expr(std::mt19937_64& rng, const Fragment& f,
                 const std::vector<Label>& labels, std::size_t size);

// Semantics read literally: quantifiers over node pairs, no shared machinery.
PairSet naive_eval(const Expr& e, const Document& doc);

PairSet to_pairs(const Relation& r);
Relation from_pairs(const Document& doc, const PairSet& ps);

// Fragment with every operation, counting to k.
Fragment full_algebra(int k);

}  // namespace xra::testing
