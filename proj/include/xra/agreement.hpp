#pragma once

#include <string>
#include <vector>

#include "xra/document.hpp"
#include "xra/expr.hpp"

namespace xra {

struct AgreementReport {
  std::string fragment;
  std::size_t pairs = 0;
  std::size_t inequivalent = 0;
  std::size_t oracle_relations = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Node-level agreement between the structural verdict and expressions: every
// inequivalent pair must be separated by the synthesized distinguisher (which
// must lie in the fragment), and no enumerated expression up to max_size may
// separate an equivalent pair.
AgreementReport check_node_agreement(const Document& doc, const Fragment& f,
                                     std::size_t max_size);

}  // namespace xra
