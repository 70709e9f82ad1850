#include "hk/rational.hpp"

#include <boost/multiprecision/integer.hpp>
#include <cmath>
#include <string>

#include "hk/dynamics.hpp"

namespace hk {

namespace mp = boost::multiprecision;

DenominatorOverflow::DenominatorOverflow(long long bits, long long bound)
    : std::runtime_error("exact replay aborted: common denominator reached " +
                         std::to_string(bits) + " bits (bound " + std::to_string(bound) +
                         ")"),
      bits_(bits) {}

RationalState RationalState::from_state(const OpinionState& x) {
  validate(x);
  const std::size_t total = x.coords.size();
  std::vector<BigInt> mantissas(total);
  std::vector<int> exponents(total);
  int min_exp = 0;
  for (std::size_t i = 0; i < total; ++i) {
    int exp = 0;
    const double mant = std::frexp(x.coords[i], &exp);
    // mant * 2^53 is an exact integer for any finite double
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    mantissas[i] = scaled;
    exponents[i] = scaled == 0 ? 0 : exp - 53;
    if (scaled != 0) min_exp = std::min(min_exp, exponents[i]);
  }
  RationalState r;
  r.n = x.n;
  r.d = x.d;
  r.den = BigInt(1) << static_cast<unsigned>(-min_exp);
  r.num.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    r.num[i] = mantissas[i] << static_cast<unsigned>(exponents[i] - min_exp);
  }
  r.normalize();
  return r;
}

OpinionState RationalState::to_state() const {
  OpinionState x(n, d);
  for (std::size_t i = 0; i < num.size(); ++i) {
    x.coords[i] = BigRational(num[i], den).convert_to<double>();
  }
  return x;
}

BigRational RationalState::coord(int i, int k) const {
  return {num[static_cast<std::size_t>(i) * d + k], den};
}

void RationalState::normalize() {
  BigInt g = den;
  for (const BigInt& v : num) {
    if (g == 1) break;
    g = mp::gcd(g, v);
  }
  if (g > 1) {
    den /= g;
    for (BigInt& v : num) v /= g;
  }
}

CommGraph build_graph_exact(const RationalState& x) {
  CommGraph g;
  g.n = x.n;
  g.adj.assign(static_cast<std::size_t>(x.n) * x.n, 0);
  const BigInt den2 = x.den * x.den;
  BigInt acc, diff;
  for (int i = 0; i < x.n; ++i) {
    g.adj[static_cast<std::size_t>(i) * x.n + i] = 1;
    for (int j = i + 1; j < x.n; ++j) {
      acc = 0;
      for (int k = 0; k < x.d; ++k) {
        diff = x.num[static_cast<std::size_t>(i) * x.d + k] -
               x.num[static_cast<std::size_t>(j) * x.d + k];
        acc += diff * diff;
      }
      const std::uint8_t edge = acc <= den2 ? 1 : 0;
      g.adj[static_cast<std::size_t>(i) * x.n + j] = edge;
      g.adj[static_cast<std::size_t>(j) * x.n + i] = edge;
    }
  }
  finalize_graph(g);
  return g;
}

RationalState hk_step_exact(const RationalState& x, const CommGraph& g,
                            long long bit_bound) {
  BigInt deg_lcm = 1;
  for (int deg : g.degrees) deg_lcm = mp::lcm(deg_lcm, BigInt(deg));

  RationalState out;
  out.n = x.n;
  out.d = x.d;
  out.den = x.den * deg_lcm;
  const auto bits = static_cast<long long>(mp::msb(out.den)) + 1;
  if (bits >= bit_bound) throw DenominatorOverflow(bits, bit_bound);

  out.num.assign(x.num.size(), BigInt(0));
  std::vector<BigInt> acc(x.d);
  for (int i = 0; i < x.n; ++i) {
    for (int k = 0; k < x.d; ++k) acc[k] = 0;
    const std::uint8_t* row = g.adj.data() + static_cast<std::size_t>(i) * x.n;
    for (int j = 0; j < x.n; ++j) {
      if (!row[j]) continue;
      for (int k = 0; k < x.d; ++k) {
        acc[k] += x.num[static_cast<std::size_t>(j) * x.d + k];
      }
    }
    const BigInt factor = deg_lcm / g.degrees[i];
    for (int k = 0; k < x.d; ++k) {
      out.num[static_cast<std::size_t>(i) * x.d + k] = acc[k] * factor;
    }
  }
  out.normalize();
  return out;
}

bool detect_merges_exact(const RationalState& x, const RationalState& x_next) {
  auto rows_equal = [](const RationalState& s, int i, int j) {
    for (int k = 0; k < s.d; ++k) {
      if (s.num[static_cast<std::size_t>(i) * s.d + k] !=
          s.num[static_cast<std::size_t>(j) * s.d + k]) {
        return false;
      }
    }
    return true;
  };
  for (int i = 0; i < x.n; ++i) {
    for (int j = i + 1; j < x.n; ++j) {
      if (rows_equal(x_next, i, j) && !rows_equal(x, i, j)) return true;
    }
  }
  return false;
}

BigRational energy_exact(const RationalState& x) {
  const BigInt den2 = x.den * x.den;
  BigInt active_num = 0;
  long long inactive = 0;
  BigInt acc, diff;
  for (int i = 0; i < x.n; ++i) {
    for (int j = i + 1; j < x.n; ++j) {
      acc = 0;
      for (int k = 0; k < x.d; ++k) {
        diff = x.num[static_cast<std::size_t>(i) * x.d + k] -
               x.num[static_cast<std::size_t>(j) * x.d + k];
        acc += diff * diff;
      }
      if (acc <= den2) {
        active_num += 2 * acc;
      } else {
        inactive += 2;
      }
    }
  }
  return BigRational(active_num, den2) + inactive;
}

RationalTrajectory rational_replay(const OpinionState& x0, long long steps,
                                   long long bit_bound) {
  validate(x0);
  if (x0.n > kRationalMaxAgents) {
    throw std::invalid_argument("rational_replay: n must be <= " +
                                std::to_string(kRationalMaxAgents));
  }
  if (steps < 1 || steps > kRationalMaxSteps) {
    throw std::invalid_argument("rational_replay: steps must lie in [1, " +
                                std::to_string(kRationalMaxSteps) + "]");
  }

  RationalTrajectory rt;
  RationalState cur = RationalState::from_state(x0);
  rt.states.push_back(cur);
  rt.energies.push_back(energy_exact(cur));

  for (long long t = 0; t < steps; ++t) {
    const CommGraph g = build_graph_exact(cur);
    RationalState next = hk_step_exact(cur, g, bit_bound);
    if (next == cur) {  // exact freeze
      rt.freezing_time = t;
      break;
    }
    if (detect_merges_exact(cur, next)) rt.merge_times.push_back(t);
    rt.states.push_back(next);
    rt.energies.push_back(energy_exact(next));
    cur = std::move(next);
  }
  return rt;
}

}  // namespace hk
