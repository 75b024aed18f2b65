#pragma once

#include "reqtax/corpus.hpp"
#include "reqtax/taxonomy.hpp"

namespace reqtax {

/// What to do with categories lacking a safety annotation: assume the worst
/// case (injury expected, erratic motion) or refuse to build.
enum class UnannotatedPolicy { worst_case, error };

/// Split each legal node's member categories by collision severity, then by
/// motion predictability. The severity split is always the ancestor of the
/// erratic split; a split only materialises when members actually differ on
/// that axis. Safety nodes inherit the legal node's requirement set and get
/// ids <parent>/harmful, <parent>/other, <parent>/erratic, <parent>/nominal.
///
/// Rebuilding is idempotent: the safety skeleton is derived from the legal
/// members and annotations alone, and existing perception children are
/// re-attached to the node that still carries their member category.
void augment_safety(Taxonomy& tree, const SpecDocument& corpus,
                    UnannotatedPolicy policy = UnannotatedPolicy::worst_case);

}  // namespace reqtax
