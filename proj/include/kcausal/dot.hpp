#pragma once

#include <string>

#include "kcausal/relation.hpp"

namespace kcausal {

// DOT digraph for a relation. Every node is declared (isolated points stay
// visible) and edges are emitted in row-major order, so identical inputs
// produce identical bytes.
std::string relation_to_dot(const Rel& r, const std::string& name);

// Cover relation (transitive reduction) of a partial order with diagonal:
// strict pairs not implied by any two-step strict chain.
Rel hasse_diagram(const Rel& order);

}  // namespace kcausal
