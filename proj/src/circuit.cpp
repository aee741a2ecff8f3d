#include "meshc/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace meshc {

CircuitElement CircuitElement::mzi(int lo, int hi, MZIParams p, bool active,
                                   bool reversed) {
  CircuitElement e;
  e.kind = Kind::MZI;
  e.mode_low = lo;
  e.mode_high = hi;
  e.params = p;
  e.active = active;
  e.reversed = reversed;
  return e;
}

CircuitElement CircuitElement::phase(int mode, double phi) {
  CircuitElement e;
  e.kind = Kind::PhaseShifter;
  e.mode_low = mode;
  e.params.phi = phi;
  return e;
}

CircuitElement CircuitElement::coupling(std::vector<int> perm) {
  CircuitElement e;
  e.kind = Kind::Coupling;
  e.perm = std::move(perm);
  return e;
}

CircuitElement CircuitElement::chip_block(std::vector<int> modes,
                                          Circuit inner) {
  CircuitElement e;
  e.kind = Kind::ChipBlock;
  e.block_modes = std::move(modes);
  e.block = std::make_shared<Circuit>(std::move(inner));
  return e;
}

Mat CircuitElement::local_matrix() const {
  switch (kind) {
    case Kind::MZI: {
      Eigen::Matrix2cd m = mzi_matrix(params);
      if (reversed) m = m.adjoint().eval();
      return m;
    }
    case Kind::PhaseShifter: {
      Mat m(1, 1);
      m(0, 0) = std::exp(Complex(0, params.phi));
      return m;
    }
    case Kind::Coupling: {
      int n = static_cast<int>(perm.size());
      Mat p = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i) p(perm[i], i) = 1.0;
      return p;
    }
    case Kind::ChipBlock:
      return block->evaluate();
  }
  throw Error("unreachable element kind");
}

void Circuit::append(CircuitElement e) {
  auto in_range = [&](int i) { return i >= 0 && i < modes_; };
  switch (e.kind) {
    case CircuitElement::Kind::MZI:
      if (!in_range(e.mode_low) || !in_range(e.mode_high) ||
          e.mode_low == e.mode_high)
        throw DimensionError("MZI modes out of range or equal");
      if (e.mode_low > e.mode_high) std::swap(e.mode_low, e.mode_high);
      break;
    case CircuitElement::Kind::PhaseShifter:
      if (!in_range(e.mode_low))
        throw DimensionError("phase shifter mode out of range");
      break;
    case CircuitElement::Kind::Coupling: {
      if (static_cast<int>(e.perm.size()) != modes_)
        throw DimensionError("coupling permutation size mismatch");
      std::vector<bool> seen(modes_, false);
      for (int v : e.perm) {
        if (!in_range(v) || seen[v])
          throw DimensionError("coupling is not a permutation");
        seen[v] = true;
      }
      break;
    }
    case CircuitElement::Kind::ChipBlock: {
      if (!e.block) throw Error("chip block without nested circuit");
      if (static_cast<int>(e.block_modes.size()) != e.block->modes())
        throw DimensionError("chip block mode list size mismatch");
      std::vector<bool> seen(modes_, false);
      for (int v : e.block_modes) {
        if (!in_range(v) || seen[v])
          throw DimensionError("chip block modes out of range or repeated");
        seen[v] = true;
      }
      break;
    }
  }
  elements_.push_back(std::move(e));
}

Mat Circuit::evaluate() const {
  Mat u = Mat::Identity(modes_, modes_);
  for (const auto& e : elements_) {
    switch (e.kind) {
      case CircuitElement::Kind::MZI: {
        Mat m = e.local_matrix();
        // left-multiply the embedded 2x2 block in place
        Eigen::RowVectorXcd lo = u.row(e.mode_low), hi = u.row(e.mode_high);
        u.row(e.mode_low) = m(0, 0) * lo + m(0, 1) * hi;
        u.row(e.mode_high) = m(1, 0) * lo + m(1, 1) * hi;
        break;
      }
      case CircuitElement::Kind::PhaseShifter:
        u.row(e.mode_low) *= std::exp(Complex(0, e.params.phi));
        break;
      case CircuitElement::Kind::Coupling: {
        Mat v(modes_, modes_);
        for (int i = 0; i < modes_; ++i) v.row(e.perm[i]) = u.row(i);
        u = std::move(v);
        break;
      }
      case CircuitElement::Kind::ChipBlock: {
        Mat b = e.block->evaluate();
        int nb = static_cast<int>(e.block_modes.size());
        Mat sub(nb, modes_);
        for (int i = 0; i < nb; ++i) sub.row(i) = u.row(e.block_modes[i]);
        sub = b * sub;
        for (int i = 0; i < nb; ++i) u.row(e.block_modes[i]) = sub.row(i);
        break;
      }
    }
  }
  return u;
}

int Circuit::mzi_depth() const {
  // Greedy earliest-start scheduling; an element occupies all its modes for
  // its whole (internal) depth. Phase shifters and couplings are free.
  std::vector<int> busy(modes_, 0);
  int depth = 0;
  for (const auto& e : elements_) {
    if (e.kind == CircuitElement::Kind::MZI) {
      int t = std::max(busy[e.mode_low], busy[e.mode_high]) + 1;
      busy[e.mode_low] = busy[e.mode_high] = t;
      depth = std::max(depth, t);
    } else if (e.kind == CircuitElement::Kind::ChipBlock) {
      int d = e.block->mzi_depth();
      if (d == 0) continue;
      int start = 0;
      for (int v : e.block_modes) start = std::max(start, busy[v]);
      for (int v : e.block_modes) busy[v] = start + d;
      depth = std::max(depth, start + d);
    }
  }
  return depth;
}

int Circuit::mzi_count() const {
  int n = 0;
  for (const auto& e : elements_) {
    if (e.kind == CircuitElement::Kind::MZI) ++n;
    if (e.kind == CircuitElement::Kind::ChipBlock) n += e.block->mzi_count();
  }
  return n;
}

int Circuit::active_mzi_count() const {
  int n = 0;
  for (const auto& e : elements_) {
    if (e.kind == CircuitElement::Kind::MZI && e.active) ++n;
    if (e.kind == CircuitElement::Kind::ChipBlock)
      n += e.block->active_mzi_count();
  }
  return n;
}

Circuit Circuit::inverse() const {
  Circuit out(modes_);
  for (auto it = elements_.rbegin(); it != elements_.rend(); ++it) {
    CircuitElement e = *it;
    switch (e.kind) {
      case CircuitElement::Kind::MZI:
        e.reversed = !e.reversed;
        break;
      case CircuitElement::Kind::PhaseShifter:
        e.params.phi = -e.params.phi;
        break;
      case CircuitElement::Kind::Coupling: {
        std::vector<int> inv(e.perm.size());
        for (size_t i = 0; i < e.perm.size(); ++i) inv[e.perm[i]] = (int)i;
        e.perm = std::move(inv);
        break;
      }
      case CircuitElement::Kind::ChipBlock:
        e.block = std::make_shared<Circuit>(e.block->inverse());
        break;
    }
    out.append(std::move(e));
  }
  return out;
}

int ChipLayout::slot_count() const {
  int n = 0;
  for (const auto& l : layers) n += static_cast<int>(l.size());
  return n;
}

void ChipLayout::validate() const {
  for (const auto& l : layers) {
    std::vector<bool> used(modes, false);
    for (int i : l) {
      if (i < 0 || i + 1 >= modes)
        throw DimensionError("layout pair out of range");
      if (used[i] || used[i + 1])
        throw DimensionError("layout pairs overlap within a layer");
      used[i] = used[i + 1] = true;
    }
  }
}

Circuit propagate_phases(const Circuit& c) {
  int m = c.modes();
  Vec d = Vec::Ones(m);
  Circuit out(m);
  for (const auto& e : c.elements()) {
    switch (e.kind) {
      case CircuitElement::Kind::PhaseShifter:
        d(e.mode_low) *= std::exp(Complex(0, e.params.phi));
        break;
      case CircuitElement::Kind::Coupling: {
        Vec nd(m);
        for (int i = 0; i < m; ++i) nd(e.perm[i]) = d(i);
        d = std::move(nd);
        out.append(e);
        break;
      }
      case CircuitElement::Kind::MZI: {
        Eigen::Matrix2cd w = e.local_matrix();
        w.col(0) *= d(e.mode_low);
        w.col(1) *= d(e.mode_high);
        MZIWithPhases r = mzi_with_output_phases(w);
        d(e.mode_low) = r.d1;
        d(e.mode_high) = r.d2;
        out.append(CircuitElement::mzi(e.mode_low, e.mode_high, r.params,
                                       e.active));
        break;
      }
      case CircuitElement::Kind::ChipBlock:
        throw Error("propagate_phases: chip blocks are not supported");
    }
  }
  for (int i = 0; i < m; ++i)
    out.append(CircuitElement::phase(i, std::arg(d(i))));
  return out;
}

}  // namespace meshc
