// Copyright 2026 The qgroup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion, followed by measured
// values. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "oracles.hpp"
#include "qgroup/error.hpp"
#include "qgroup/hsp.hpp"
#include "qgroup/integer_matrix.hpp"
#include "qgroup/qep.hpp"

namespace qgroup {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  failures += !o.pass;
  std::printf("%s  %-32s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Subgroup from_mask(const AbelianGroup& G, const std::vector<bool>& mask) {
  std::vector<GroupElement> members;
  for (std::int64_t i = 0; i < G.order(); ++i) {
    if (mask[static_cast<std::size_t>(i)]) members.push_back(element_at(G, i));
  }
  return make_subgroup(G, members);
}

Bytes random_bytes(std::size_t size, Rng& rng) {
  Bytes out(size);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.uniform(256));
  return out;
}

// A key whose generator leaves room for chaff when chaff is wanted.
SessionKey usable_key(const AbelianGroup& G, bool chaff, Rng& rng) {
  for (;;) {
    const auto key = SessionKey::from_bytes(random_bytes(16, rng));
    try {
      const auto g = derive_generator(key, G);
      if (!chaff || element_order(G, g) < G.order()) return key;
    } catch (const Error&) {
    }
  }
}

Outcome abelian_oracle_equivalence() {
  const auto start = Clock::now();
  Rng rng(101);
  const auto groups = oracle::groups_up_to(512);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    const AbelianGroup G(groups[rng.uniform(groups.size())]);
    std::vector<GroupElement> gens{random_element(G, rng)};
    if (t % 2) gens.push_back(random_element(G, rng));
    auto inst = make_abelian_instance(make_subgroup(G, gens));
    OracleTable copy = inst.oracle;
    const auto result = solve_abelian_hsp(inst, rng);
    agree += result.report.success && result.recovered == brute_force_hsp(G, copy);
  }
  const double secs = seconds_since(start);
  return {agree >= 99 && secs < 60, fmt("%d/100 agree with brute force", agree)};
}

Outcome character_support() {
  // Z_6, H = <2>. One pipeline run per sample, keeping the measured coset.
  const AbelianGroup G({6});
  auto inst = make_abelian_instance(make_subgroup(G, {GroupElement{{2}}}));
  Rng rng(102);
  std::map<std::int64_t, std::map<std::int64_t, int>> by_coset;
  std::map<std::int64_t, int> all;
  int outside = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    auto state = apply_oracle(uniform_superposition(G, inst.oracle.value_dim()), inst.oracle);
    auto [z, collapsed] = measure_value_register(state, rng);
    const auto y = measure_group_register(qft_abelian(discard_value_register(collapsed, z), G), rng);
    outside += y != 0 && y != 3;
    ++all[y];
    ++by_coset[z][y];
  }
  auto tv = [](const std::map<std::int64_t, double>& p, const std::map<std::int64_t, double>& q) {
    double s = 0;
    for (std::int64_t y = 0; y < 6; ++y) {
      const double a = p.count(y) ? p.at(y) : 0.0;
      const double b = q.count(y) ? q.at(y) : 0.0;
      s += std::abs(a - b);
    }
    return s / 2;
  };
  auto normalise = [](const std::map<std::int64_t, int>& c) {
    double n = 0;
    for (const auto& [y, k] : c) n += k;
    std::map<std::int64_t, double> p;
    for (const auto& [y, k] : c) p[y] = k / n;
    return p;
  };
  const std::map<std::int64_t, double> uniform{{0, 0.5}, {3, 0.5}};
  const double tv_uniform = tv(normalise(all), uniform);
  const double tv_cosets =
      by_coset.size() == 2 ? tv(normalise(by_coset[0]), normalise(by_coset[1])) : 1.0;
  return {outside == 0 && tv_uniform < 0.05 && tv_cosets < 0.05,
          fmt("outside {0,3}: %d, TV to uniform %.4f, TV between cosets %.4f", outside,
              tv_uniform, tv_cosets)};
}

// Element set of U n U' with U' the conjugate by the swap.
std::vector<std::uint32_t> meet_with_conjugate(const WreathSubgroup& U) {
  const auto conj = conjugate_subgroup(U, WreathElement{U.n(), 0, 0, true});
  std::vector<std::uint32_t> out;
  for (const auto& x : U.elements()) {
    if (conj.contains(x)) out.push_back(w_index(x));
  }
  return out;
}

Outcome wreath_claim() {
  const auto start = Clock::now();
  std::string detail;
  bool pass = true;
  for (int n = 2; n <= 3; ++n) {
    const double threshold = n == 2 ? 0.70 : 0.825;
    Rng rng(103 + static_cast<std::uint64_t>(n));
    const int trials = 200;
    int success = 0, first = 0, spans = 0;
    for (int t = 0; t < trials; ++t) {
      std::vector<WreathElement> gens;
      const auto k = rng.uniform(3);
      for (std::uint64_t i = 0; i < k; ++i) gens.push_back(w_random(n, rng));
      const auto U = w_closure(n, gens);
      auto inst = make_wreath_instance(U);
      const auto r = solve_wn_hsp(inst, rng);
      success += r.report.success;
      first += r.report.success && r.batches == 1;

      // 4n plain Fourier samples of coset states: do they pin down U n U'?
      F2Matrix samples{2 * n + 1, {}};
      const std::uint64_t all_qubits = (std::uint64_t{1} << (2 * n + 1)) - 1;
      for (int i = 0; i < 4 * n; ++i) {
        auto state = apply_oracle(
            uniform_superposition(w_order(n), inst.oracle.value_dim()), inst.oracle);
        auto [z, collapsed] = measure_value_register(state, rng);
        samples.rows.push_back(static_cast<BitVector>(measure_group_register(
            hadamard_on_qubits(discard_value_register(collapsed, z), all_qubits), rng)));
      }
      std::vector<WreathElement> basis;
      for (auto v : f2_nullspace(samples)) {
        basis.push_back(w_from_index(n, static_cast<std::uint32_t>(v)));
      }
      std::vector<std::uint32_t> spanned;
      const auto C = w_closure(n, basis);
      for (const auto& x : C.elements()) spanned.push_back(w_index(x));
      spans += spanned == meet_with_conjugate(U);
    }
    const double rate = success / static_cast<double>(trials);
    const double span_rate = spans / static_cast<double>(trials);
    pass = pass && rate >= threshold && span_rate >= threshold;
    detail += fmt("n=%d: success %.3f, 4n samples fix U n U' %.3f (need %.3f), first batch %.3f; ",
                  n, rate, span_rate, threshold, first / static_cast<double>(trials));
  }
  const double secs = seconds_since(start);
  return {pass && secs < 120, detail};
}

Outcome classical_baseline() {
  Rng rng(104);
  int checked = 0, exact = 0;
  for (const auto& n : oracle::groups_up_to(512)) {
    const AbelianGroup G(n);
    auto inst = make_abelian_instance(make_subgroup(G, {random_element(G, rng)}));
    const auto H = brute_force_hsp(G, inst.oracle);
    ++checked;
    exact += inst.oracle.evaluations() == G.order() && H == *inst.true_subgroup;
  }
  for (int n = 1; n <= kMaxWreathN; ++n) {
    auto inst = make_wreath_instance(w_closure(n, {w_random(n, rng)}));
    const auto U = brute_force_hsp(n, inst.oracle);
    ++checked;
    exact += inst.oracle.evaluations() == static_cast<std::int64_t>(w_order(n)) &&
             U == *inst.true_subgroup;
  }
  return {exact == checked, fmt("%d/%d groups used exactly |G| evaluations", exact, checked)};
}

Outcome qft_unitarity() {
  Rng rng(105);
  double worst_norm = 0, worst_roundtrip = 0;
  int groups = 0;
  for (const auto& n : oracle::groups_up_to(64)) {
    const AbelianGroup G(n);
    ++groups;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXcd v(G.order());
      for (auto& a : v) a = {rng.normal(), rng.normal()};
      v.normalize();
      const QuantumState s(G.order(), 1, v);
      const auto f = qft_abelian(s, G);
      worst_norm = std::max(worst_norm, std::abs(f.norm() - 1.0));
      worst_roundtrip = std::max(
          worst_roundtrip, (inverse_qft_abelian(f, G).amplitudes() - v).norm());
    }
  }
  return {worst_norm < 1e-9 && worst_roundtrip < 1e-9,
          fmt("%d groups, max |norm-1| %.2e, max roundtrip error %.2e", groups, worst_norm,
              worst_roundtrip)};
}

Outcome annihilator_duality() {
  int subgroups = 0, good = 0;
  for (const auto& n : oracle::groups_up_to(64)) {
    const AbelianGroup G(n);
    for (const auto& sub : oracle::all_subgroups(n)) {
      const Subgroup H = from_mask(G, sub.mask);
      const Subgroup perp = annihilator(H);
      std::set<oracle::Coords> members, perp_members;
      for (const auto& h : H.elements()) members.insert(h.coords);
      for (const auto& y : perp.elements()) perp_members.insert(y.coords);
      ++subgroups;
      good += annihilator(perp) == H && H.order() * perp.order() == G.order() &&
              perp_members == oracle::annihilator(n, members);
    }
  }
  return {good == subgroups, fmt("%d/%d subgroups satisfy duality", good, subgroups)};
}

Outcome smith_contract() {
  Rng rng(106);
  int good = 0;
  for (int t = 0; t < 200; ++t) {
    const auto rows = static_cast<Eigen::Index>(1 + rng.uniform(6));
    const auto cols = static_cast<Eigen::Index>(1 + rng.uniform(6));
    IntegerMatrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        M(i, j) = Integer(static_cast<std::int64_t>(rng.uniform(101)) - 50);
      }
    }
    const auto snf = smith_normal_form(M);
    bool ok = IntegerMatrix(snf.U * M * snf.V) == snf.D &&
              abs(Integer(oracle::bareiss_det(snf.U))) == Integer(1) &&
              abs(Integer(oracle::bareiss_det(snf.V))) == Integer(1);
    const Eigen::Index r = std::min(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) ok = ok && (i == j || snf.D(i, j) == Integer(0));
    }
    for (Eigen::Index i = 0; i + 1 < r; ++i) {
      const Integer a = snf.D(i, i), b = snf.D(i + 1, i + 1);
      ok = ok && a >= Integer(0) && (a == Integer(0) ? b == Integer(0) : b % a == Integer(0));
    }
    good += ok;
  }
  return {good == 200, fmt("%d/200 matrices", good)};
}

Outcome qep_roundtrip() {
  Rng rng(107);
  const std::vector<ChaffRatio> ratios{{0, 1}, {1, 1}, {3, 1}};
  int ok = 0;
  for (int t = 0; t < 200; ++t) {
    // |G| in [8, 4096].
    std::vector<std::int64_t> factors{static_cast<std::int64_t>(8 << rng.uniform(7))};
    if (rng.uniform(2)) factors.push_back(std::min<std::int64_t>(factors[0], 2 << rng.uniform(2)));
    const AbelianGroup G(factors);
    const auto ratio = ratios[static_cast<std::size_t>(t % 3)];
    const auto key = usable_key(G, ratio.positive(), rng);
    const Bytes p = random_bytes(rng.uniform(4097), rng);
    const auto frame = encrypt(QepParams{G, ratio, rng.next()}, key, p, rng);
    ok += decrypt(key, deserialize(serialize(frame))) == p;
  }

  // Designated small instance: Z_16 x Z_4, 12 bytes, chaff 1.
  const AbelianGroup G({16, 4});
  const auto key = usable_key(G, true, rng);
  const auto H = make_subgroup(G, {derive_generator(key, G)});
  const Bytes p = random_bytes(12, rng);
  const auto frame = encrypt(QepParams{G, ChaffRatio{1, 1}, 7}, key, p, rng);
  int positions = 0, detected = 0;
  for (std::size_t i = 0; i < frame.elements.size(); ++i) {
    if (!H.contains(frame.elements[i])) continue;
    ++positions;
    auto tampered = frame;
    do {
      tampered.elements[i] = random_element(G, rng);
    } while (H.contains(tampered.elements[i]));
    try {
      decrypt(key, tampered);
    } catch (const Error& e) {
      detected += e.code() == ErrorCode::kLengthMismatch;
    }
  }
  return {ok == 200 && positions > 0 && detected == positions,
          fmt("%d/200 roundtrips, tampering detected at %d/%d data positions", ok, detected,
              positions)};
}

Outcome attack_reproduction() {
  const AbelianGroup G({64, 4});
  Rng rng(108);
  int recovered = 0;
  for (int t = 0; t < 100; ++t) {
    const auto key = usable_key(G, true, rng);
    const Bytes p = random_bytes(32, rng);
    const auto frame = encrypt(QepParams{G, ChaffRatio{1, 1}, rng.next()}, key, p, rng);
    AttackSetup setup;
    setup.level = OracleLevel::kCosetSeparating;
    setup.true_subgroup = make_subgroup(G, {derive_generator(key, G)});
    setup.true_plaintext = p;
    recovered += eve_attack(frame, setup, rng).subgroup_correct;
  }
  std::string detail = fmt("H recovered %d/100; ", recovered);
  for (const ChaffRatio ratio : {ChaffRatio{0, 1}, ChaffRatio{1, 1}, ChaffRatio{3, 1}}) {
    for (const std::size_t prefix : {std::size_t{0}, std::size_t{4}}) {
      double work = 0, tried = 0;
      int success = 0;
      for (int t = 0; t < 100; ++t) {
        const auto key = usable_key(G, ratio.positive(), rng);
        const Bytes p = random_bytes(32, rng);
        const auto frame = encrypt(QepParams{G, ratio, rng.next()}, key, p, rng);
        AttackSetup setup;
        setup.level = OracleLevel::kCosetSeparating;
        setup.true_subgroup = make_subgroup(G, {derive_generator(key, G)});
        setup.true_plaintext = p;
        setup.known_prefix = Bytes(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(prefix));
        const auto r = eve_attack(frame, setup, rng);
        work += static_cast<double>(r.work());
        tried += static_cast<double>(r.generators_tried);
        success += r.success;
      }
      detail += fmt("chaff %g prefix %zu: plaintext %d/100, mean work %.1f, mean tried %.2f; ",
                    ratio.value(), prefix, success, work / 100, tried / 100);
    }
  }
  return {recovered >= 99, detail};
}

// Reported only: Eve with no oracle against a 256-element group and heavy chaff.
void blind_attack_measurement() {
  const AbelianGroup G({256});
  Rng rng(109);
  int success = 0;
  double work = 0;
  for (int t = 0; t < 100; ++t) {
    const auto key = usable_key(G, true, rng);
    const Bytes p = random_bytes(32, rng);
    const auto frame = encrypt(QepParams{G, ChaffRatio{2, 1}, rng.next()}, key, p, rng);
    AttackSetup setup;
    setup.true_plaintext = p;
    const auto r = eve_attack(frame, setup, rng);
    success += r.success;
    work += static_cast<double>(r.work());
  }
  std::printf("INFO  %-32s plaintext %d/100, mean work %.1f\n", "blind attack |G|=256 chaff 2",
              success, work / 100);
}

}  // namespace
}  // namespace qgroup

int main() {
  using namespace qgroup;
  criterion("abelian-hsp-oracle-equivalence", abelian_oracle_equivalence);
  criterion("character-support-z6", character_support);
  criterion("wreath-success-probability", wreath_claim);
  criterion("classical-baseline-evaluations", classical_baseline);
  criterion("qft-unitarity-roundtrip", qft_unitarity);
  criterion("annihilator-duality", annihilator_duality);
  criterion("smith-normal-form-contract", smith_contract);
  criterion("qep-roundtrip-and-tampering", qep_roundtrip);
  criterion("attack-coset-oracle", attack_reproduction);
  blind_attack_measurement();
  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
