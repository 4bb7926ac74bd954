#pragma once

#include <string>

#include "ccp/equivalence.hpp"

namespace ccp {

// Byte-stable renderings: states are sorted by their display form, edge
// lists by (source, label, target). True-labeled edges carry no label
// attribute in DOT, matching the usual convention of omitting them.
std::string lts_to_dot(const Lts& lts, const TermPool& pool, const ConstraintSystem& cs);
std::string lts_to_json(const Lts& lts, const TermPool& pool, const ConstraintSystem& cs);

std::string partition_to_string(const Partition& partition, const TermPool& pool,
                                const ConstraintSystem& cs);

}  // namespace ccp
