#pragma once

#include "ccp/semantics.hpp"

namespace ccp {

// Milner's reduction from weak to strong bisimilarity: keep the original
// transitions, add a true-labeled self-loop on every state, and absorb
// true-labeled transitions around a single labeled step. Adds no states.
Lts saturate_milner(const Lts& lts, const ConstraintSystem& cs);

// Lub-closure saturation: additionally composes any two consecutive
// transitions into one whose label is the lub of their labels. Because lub
// is idempotent over a finite lattice, the closure stays finite. Adds no
// states. This is the relation that makes the ccp partition refinement
// decide weak saturated barbed bisimilarity.
Lts saturate_lub(const Lts& lts, const ConstraintSystem& cs);

}  // namespace ccp
