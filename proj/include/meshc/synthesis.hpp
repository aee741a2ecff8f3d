#pragma once

#include "meshc/compiler.hpp"
#include "meshc/networks.hpp"

namespace meshc {

/// Brick-wall (Clements-shaped) synthesis: m(m-1)/2 MZIs, depth <= m.
Circuit synth_clements(const UnitaryMatrix& u);

/// Triangular Reck synthesis: m(m-1)/2 MZIs, depth <= 2m-3.
Circuit synth_reck(const UnitaryMatrix& u);

/// Partial synthesis of an m x n isometry on the partial sorting network:
/// mn - n(n+1)/2 MZIs, depth <= m; the circuit's first n columns equal v.
Circuit synth_boson_sampling(const Isometry& v);

/// Real parameters of an m x n isometry up to right diagonal: 2nm - n(n+1).
long parameter_count(long m, long n);

/// Completion of v to an m x m unitary whose first n columns are v.
Mat complete_isometry(const Isometry& v);

}  // namespace meshc
