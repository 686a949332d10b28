#include "tst/dbm.hpp"

#include <cassert>
#include <stdexcept>

namespace tst {

bool DbmBound::tighter_than(const DbmBound& o) const {
  if (inf) return false;
  if (o.inf) return true;
  if (value != o.value) return value < o.value;
  return strict && !o.strict;
}

DbmBound DbmBound::min(const DbmBound& a, const DbmBound& b) {
  return a.tighter_than(b) ? a : b;
}

DbmBound DbmBound::add(const DbmBound& a, const DbmBound& b) {
  if (a.inf || b.inf) return infinite();
  return {a.value + b.value, a.strict || b.strict, false};
}

Dbm::Dbm(std::size_t dim) : dim_(dim), m_(dim * dim, DbmBound::infinite()) {}

Dbm Dbm::universal(std::size_t num_clocks) {
  Dbm d(num_clocks + 1);
  for (std::size_t i = 0; i < d.dim_; ++i) d.entry(i, i) = DbmBound::le(0);
  for (std::size_t i = 1; i < d.dim_; ++i) d.entry(0, i) = DbmBound::le(0);
  return d;
}

DbmBound& Dbm::entry(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
const DbmBound& Dbm::entry(std::size_t i, std::size_t j) const {
  return m_[i * dim_ + j];
}

const DbmBound& Dbm::at(std::size_t i, std::size_t j) const {
  return entry(i, j);
}

void Dbm::constrain(std::size_t i, std::size_t j, const DbmBound& b) {
  entry(i, j) = DbmBound::min(entry(i, j), b);
}

void Dbm::close() {
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (entry(i, k).inf) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        DbmBound via = DbmBound::add(entry(i, k), entry(k, j));
        if (via.tighter_than(entry(i, j))) entry(i, j) = via;
      }
    }
  }
  empty_ = false;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (entry(i, i).tighter_than(DbmBound::le(0))) {
      empty_ = true;
      break;
    }
  }
}

namespace {

bool bound_holds(const Rational& diff, const DbmBound& b) {
  if (b.inf) return true;
  Rational limit(b.value);
  return b.strict ? diff < limit : diff <= limit;
}

}  // namespace

bool Dbm::contains(const std::vector<Rational>& vals) const {
  if (empty_) return false;
  assert(vals.size() == num_clocks());
  auto value_of = [&](std::size_t i) {
    return i == 0 ? Rational(0) : vals[i - 1];
  };
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!bound_holds(value_of(i) - value_of(j), entry(i, j))) return false;
    }
  }
  return true;
}

Dbm Dbm::meet(const Dbm& o) const {
  assert(dim_ == o.dim_);
  Dbm out = *this;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) {
    out.m_[i] = DbmBound::min(out.m_[i], o.m_[i]);
  }
  out.close();
  return out;
}

bool Dbm::subset_of(const Dbm& o) const {
  assert(dim_ == o.dim_);
  if (empty_) return true;
  if (o.empty_) return false;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) {
    if (o.m_[i].tighter_than(m_[i])) return false;
  }
  return true;
}

Dbm Dbm::future(bool strict) const {
  Dbm out = *this;
  if (empty_) return out;
  for (std::size_t i = 1; i < dim_; ++i) out.entry(i, 0) = DbmBound::infinite();
  if (strict) {
    // Points on the lower diagonal boundary need delta = 0; excluding them
    // is exactly strictifying the lower bounds of the weak future.
    for (std::size_t i = 1; i < dim_; ++i) {
      if (!out.entry(0, i).inf) out.entry(0, i).strict = true;
    }
  }
  out.close();
  return out;
}

Dbm Dbm::past(bool strict) const {
  Dbm out = *this;
  if (empty_) return out;
  for (std::size_t i = 1; i < dim_; ++i) {
    DbmBound lo = DbmBound::le(0);
    for (std::size_t j = 1; j < dim_; ++j) {
      if (j == i) continue;
      lo = DbmBound::min(lo, out.entry(j, i));
    }
    out.entry(0, i) = lo;
  }
  if (strict) {
    for (std::size_t i = 1; i < dim_; ++i) {
      if (!out.entry(i, 0).inf) out.entry(i, 0).strict = true;
    }
  }
  out.close();
  return out;
}

Dbm Dbm::reset(const std::vector<std::size_t>& clock_indices) const {
  Dbm out = *this;
  if (empty_) return out;
  for (std::size_t x : clock_indices) {
    assert(x >= 1 && x < dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j == x) continue;
      out.entry(x, j) = out.entry(0, j);
      out.entry(j, x) = out.entry(j, 0);
    }
  }
  out.close();
  return out;
}

Dbm Dbm::free(const std::vector<std::size_t>& clock_indices) const {
  Dbm out = *this;
  if (empty_) return out;
  for (std::size_t x : clock_indices) {
    assert(x >= 1 && x < dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j == x) continue;
      out.entry(x, j) = DbmBound::infinite();
      out.entry(j, x) = DbmBound::infinite();
    }
    out.entry(0, x) = DbmBound::le(0);
  }
  out.close();
  return out;
}

Dbm Dbm::extrapolate(const std::vector<std::int64_t>& max_consts) const {
  assert(max_consts.size() == num_clocks());
  Dbm out = *this;
  if (empty_) return out;
  auto max_of = [&](std::size_t i) {
    return i == 0 ? std::int64_t{0} : max_consts[i - 1];
  };
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      DbmBound& b = out.entry(i, j);
      if (b.inf) continue;
      if (i != 0 && b.value > max_of(i)) {
        b = DbmBound::infinite();
      } else if (b.value < -max_of(j)) {
        b = DbmBound::lt(-max_of(j));
      }
    }
  }
  out.close();
  return out;
}

std::vector<Dbm> Dbm::complement() const {
  std::vector<Dbm> out;
  if (empty_) {
    out.push_back(universal(num_clocks()));
    return out;
  }
  Dbm base = universal(num_clocks());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      const DbmBound& b = entry(i, j);
      if (!b.tighter_than(base.entry(i, j))) continue;
      Dbm piece = base;
      piece.constrain(j, i, DbmBound{-b.value, !b.strict, false});
      piece.close();
      if (!piece.is_empty()) out.push_back(std::move(piece));
    }
  }
  return out;
}

std::optional<Interval> Dbm::ray_interval(
    const std::vector<Rational>& point) const {
  if (empty_) return std::nullopt;
  assert(point.size() == num_clocks());
  auto value_of = [&](std::size_t i) {
    return i == 0 ? Rational(0) : point[i - 1];
  };
  Interval iv{Rational(0), false, std::nullopt, false};
  for (std::size_t i = 1; i < dim_; ++i) {
    for (std::size_t j = 1; j < dim_; ++j) {
      if (i == j) continue;
      if (!bound_holds(value_of(i) - value_of(j), entry(i, j))) {
        return std::nullopt;
      }
    }
  }
  for (std::size_t i = 1; i < dim_; ++i) {
    const DbmBound& up = entry(i, 0);
    if (!up.inf) {
      Rational cap = Rational(up.value) - value_of(i);
      if (!iv.hi || cap < *iv.hi) {
        iv.hi = cap;
        iv.hi_strict = up.strict;
      } else if (cap == *iv.hi) {
        iv.hi_strict = iv.hi_strict || up.strict;
      }
    }
    const DbmBound& lo = entry(0, i);
    if (!lo.inf) {
      Rational floor = Rational(-lo.value) - value_of(i);
      if (floor > iv.lo) {
        iv.lo = floor;
        iv.lo_strict = lo.strict;
      } else if (floor == iv.lo) {
        iv.lo_strict = iv.lo_strict || lo.strict;
      }
    }
  }
  if (iv.is_empty()) return std::nullopt;
  return iv;
}

std::vector<Rational> Dbm::pick_point() const {
  if (empty_) throw std::invalid_argument("pick_point on empty zone");
  const std::int64_t f = static_cast<std::int64_t>(dim_) + 1;
  // Scale by f and turn strict bounds into weak ones one unit tighter. A
  // simple cycle has at most dim_ strict edges, each losing 1/f, so a
  // consistent strict system stays consistent.
  Dbm w(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const DbmBound& b = entry(i, j);
      w.entry(i, j) =
          b.inf ? DbmBound::infinite() : DbmBound::le(b.value * f - (b.strict ? 1 : 0));
    }
  }
  w.close();
  assert(!w.is_empty());
  std::vector<Rational> out;
  for (std::size_t i = 1; i < dim_; ++i) {
    std::int64_t v = -w.entry(0, i).value;  // current minimum of clock i
    w.constrain(i, 0, DbmBound::le(v));
    w.constrain(0, i, DbmBound::le(-v));
    w.close();
    assert(!w.is_empty());
    out.push_back(Rational(v, f));
  }
  return out;
}

std::size_t Dbm::hash() const {
  std::size_t h = empty_ ? 0x517cc1b727220a95ull : 0;
  for (const auto& b : m_) {
    std::size_t e = b.inf ? 0x2545f4914f6cdd1dull
                          : (static_cast<std::size_t>(b.value) * 2 +
                             (b.strict ? 1 : 0));
    h = h * 1099511628211ull + e;
  }
  return h;
}

}  // namespace tst
