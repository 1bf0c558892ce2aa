#pragma once

#include <string>
#include <vector>

#include "qctl/syntax.hpp"
#include "qctl/trees.hpp"

namespace qctl {

// layer_i, with layer_m1 for i = -1.
std::string layer_prop(int i);

// Infinite-tree shape(k) over layer_m1 .. layer_k.
Formula shape_formula(unsigned k);

// Finite-tree shape(k) over layer_0 .. layer_k. With weak_progress = false the two
// EXEF-progress conjuncts are left out.
Formula shape_finite(unsigned k, bool weak_progress = true);

struct LayerCheckReport {
  bool verdict = true;
  char condition = 0;  // 'a' .. 'd' when violated
  std::vector<NodeId> witness;
};

// Conditions (a)-(d) on the completion of t in which every leaf continues as an infinite
// chain of copies of itself.
LayerCheckReport is_k_layered(const TreeModel& t, unsigned k);

// Rewrites AX psi as ~EX ~psi; rejects every other temporal operator.
Formula ex_only(const Formula& f);

// trans(i, f) with EX psi -> EF(layer_{i-1} & trans(i-1, psi)).
Formula trans_ef(unsigned i, const Formula& f);
// trans(i, f) with EX psi -> EXEF(layer_{i-1} & trans(i-1, psi)).
Formula trans_exef(unsigned i, const Formula& f);

// trans(k, f) & shape(k), k = md(f).
Formula ex_to_ef(const Formula& f);
Formula ex_to_exef_finite(const Formula& f, bool weak_progress = true);

Formula phi_fin();
Formula embed_finite_in_infinite(const Formula& f);

Formula phi_fin_gt();
Formula totalize(const Formula& f);
struct GtEmbedding {
  Formula embedded;   // trans(f) & phi'_fin
  Formula totalized;  // f & EXEF true & AXAG EXEF true
};
GtEmbedding embed_gt_in_infinite(const Formula& f);

enum class ModalityMap { ExExef, ExEf };
ModalityMap parse_modality_map(const std::string& s);
Formula rewrite_modality(const Formula& f, ModalityMap map, bool inverse = false);

// Depth j gets layer_{max(-1, k-j)} in place of its Y_k labels. With finite = true only
// layer_0 .. layer_k are used and nodes below depth k are dropped; otherwise every leaf
// gains one child copy labelled layer_m1.
TreeModel decorate_layers(const TreeModel& t, unsigned k, bool finite);

}  // namespace qctl
