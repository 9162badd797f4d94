#pragma once

#include "deldd/bool_formula.hpp"
#include "deldd/manager.hpp"

namespace deldd {

/// Rule whose reduced graphs are the leaf-flipped graphs of `rule` (T0<->T1, E0<->E1, EQ fixed).
Rule leaf_flipped(Rule rule);
/// Rule whose reduced graphs are the edge-flipped graphs of `rule` (T0<->E0, T1<->E1, EQ fixed).
Rule edge_flipped(Rule rule);

/// Copies the graph of f into dst with the labels of all leaves exchanged.
/// dst must use leaf_flipped(src.rule()) over the same vocabulary.
NodeRef flip_leaves(const DdManager& src, NodeRef f, DdManager& dst);

/// Copies the graph of f into dst with Then and Else edges exchanged.
/// dst must use edge_flipped(src.rule()). Unsupported with complement edges.
NodeRef flip_edges(const DdManager& src, NodeRef f, DdManager& dst);

/// Given the T0 diagram of a function g held by t0, returns the diagram of g in
/// target (rule T0, T1, E0 or E1) obtained only by negation, variable
/// complementation and flips of T0 graphs.
NodeRef convert_via_t0(DdManager& t0, NodeRef g, DdManager& target);

/// Builds f in target (T0/T1/E0/E1) through a scratch T0 manager and flips.
NodeRef variant_via_t0(DdManager& target, const BoolFormula& f);

/// Structural isomorphism: same variables, same edge roles, same leaf labels
/// and complement marks, under a consistent node bijection.
bool isomorphic(const DdManager& a, NodeRef fa, const DdManager& b, NodeRef fb);

}  // namespace deldd
