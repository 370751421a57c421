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

#include "qgroup/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <mutex>
#include <ostream>
#include <thread>

#include "qgroup/error.hpp"
#include "qgroup/hsp.hpp"
#include "qgroup/qep.hpp"
#include "qgroup/report.hpp"

namespace qgroup {
namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kKey = 3, kFrame = 4, kBudget = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateKey:
    case ErrorCode::kNoChaffSpace:
      return kKey;
    case ErrorCode::kMalformedFrame:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kDigitRange:
      return kFrame;
    default:
      return kIo;
  }
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("cannot write " + path);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !parts.empty()) parts.push_back(cur);
  return parts;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> v;
  for (const auto& p : split(s, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "bad integer '" + p + "'");
    }
  }
  return v;
}

// Runs body(t) for t in [0, trials) on a small thread pool.
template <typename Body>
void parallel_trials(std::int64_t trials, Body&& body) {
  const auto hw = static_cast<std::int64_t>(std::max(1u, std::thread::hardware_concurrency()));
  const std::int64_t workers = std::clamp<std::int64_t>(trials, 1, hw);
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t t = next++; t < trials; t = next++) {
        try {
          body(t);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

void emit(std::ostream& out, Json report, const CommandConfig& cfg) {
  if (!cfg.no_timestamp) report["timestamp"] = utc_timestamp();
  out << report.dump(2) << "\n";
}

double median(std::vector<std::int64_t> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? static_cast<double>(v[m]) : 0.5 * static_cast<double>(v[m - 1] + v[m]);
}

double mean(const std::vector<std::int64_t>& v) {
  if (v.empty()) return 0.0;
  double s = 0;
  for (auto x : v) s += static_cast<double>(x);
  return s / static_cast<double>(v.size());
}

int cmd_keygen(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.bytes < static_cast<std::int64_t>(kMinKeyBytes)) {
    throw UsageError("--bytes must be at least 8");
  }
  Rng rng = Rng::substream(cfg.seed, "key");
  Bytes key(static_cast<std::size_t>(cfg.bytes));
  for (auto& b : key) b = static_cast<std::uint8_t>(rng.uniform(256));
  write_file(cfg.out_path, key);
  Json report = report_header("keygen");
  report["bytes"] = cfg.bytes;
  report["seed"] = cfg.seed;
  emit(out, std::move(report), cfg);
  return kOk;
}

int cmd_encrypt(const CommandConfig& cfg, std::ostream& out) {
  const QepParams params{AbelianGroup::parse(cfg.group), ChaffRatio::parse(cfg.chaff),
                         Rng::substream(cfg.seed, "placement").next()};
  const SessionKey key = SessionKey::from_bytes(read_file(cfg.key_path));
  const Bytes plaintext = read_file(cfg.in_path);
  Rng rng = Rng::substream(cfg.seed, "chaff");
  const CiphertextFrame frame = encrypt(params, key, plaintext, rng);
  write_file(cfg.out_path, serialize(frame));

  const std::int64_t r = element_order(params.group, derive_generator(key, params.group));
  const std::uint64_t digits = digit_count(r, plaintext.size());
  Json report = report_header("encrypt");
  report["group"] = params.group.to_string();
  report["chaff_ratio"] = std::to_string(params.chaff_ratio.num) + "/" +
                          std::to_string(params.chaff_ratio.den);
  report["plaintext_length"] = plaintext.size();
  report["generator_order"] = r;
  report["digit_count"] = digits;
  report["chaff_count"] = frame.elements.size() - digits;
  report["element_count"] = frame.elements.size();
  report["seed"] = cfg.seed;
  emit(out, std::move(report), cfg);
  return kOk;
}

int cmd_decrypt(const CommandConfig& cfg, std::ostream& out) {
  const SessionKey key = SessionKey::from_bytes(read_file(cfg.key_path));
  const CiphertextFrame frame = deserialize(read_file(cfg.in_path));
  const Bytes plaintext = decrypt(key, frame);
  write_file(cfg.out_path, plaintext);
  Json report = report_header("decrypt");
  report["group"] = frame.group.to_string();
  report["element_count"] = frame.elements.size();
  report["plaintext_length"] = plaintext.size();
  emit(out, std::move(report), cfg);
  return kOk;
}

struct TrialSummary {
  Json json;
  bool success = false;
  bool first_batch = false;
  std::int64_t rounds = 0;
  std::int64_t evaluations = 0;
};

int cmd_hsp(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
  const bool wreath = cfg.wreath_n > 0;
  if (wreath == !cfg.group.empty()) throw UsageError("give exactly one of --group and --wreath");
  std::vector<TrialSummary> results(static_cast<std::size_t>(cfg.trials));

  if (wreath) {
    const int n = cfg.wreath_n;
    std::optional<WreathSubgroup> fixed;
    if (!cfg.gens.empty()) {
      std::vector<WreathElement> gens;
      for (const auto& s : split(cfg.gens, ';')) gens.push_back(parse_wreath_element(s));
      fixed = w_closure(n, gens);
    }
    parallel_trials(cfg.trials, [&](std::int64_t t) {
      WreathSubgroup U = fixed ? *fixed : [&] {
        Rng pick = Rng::substream(cfg.seed, "instance", static_cast<std::uint64_t>(t));
        std::vector<WreathElement> gens;
        const auto count = pick.uniform(3);
        for (std::uint64_t i = 0; i < count; ++i) gens.push_back(w_random(n, pick));
        return w_closure(n, gens);
      }();
      WreathHspInstance instance = make_wreath_instance(U);
      Rng rng = Rng::substream(cfg.seed, "measurement", static_cast<std::uint64_t>(t));
      const WreathHspResult result = solve_wn_hsp(instance, rng);
      auto& s = results[static_cast<std::size_t>(t)];
      s.json = {{"trial", t}};
      Json hidden = Json::array();
      for (const auto& g : U.generators()) hidden.push_back(to_string(g));
      s.json["hidden_generators"] = hidden;
      s.json["hidden_order"] = U.order();
      s.json.update(to_json(result.report));
      s.json["batches"] = result.batches;
      s.success = result.report.success;
      s.first_batch = s.success && result.batches == 1;
      s.rounds = result.report.rounds;
      s.evaluations = result.report.oracle_evaluations;
    });
  } else {
    const AbelianGroup G = AbelianGroup::parse(cfg.group);
    if (G.order() > kMaxBruteForce) {
      throw Error(ErrorCode::kTooLarge, "hsp demonstrations are limited to |G| <= 512");
    }
    std::optional<Subgroup> fixed;
    if (!cfg.gens.empty()) {
      std::vector<GeneratorTerm> terms;
      for (const auto& s : split(cfg.gens, ';')) terms.push_back(GeneratorTerm::integers(parse_ints(s)));
      fixed = subgroup_from_generators(G, terms);
    }
    parallel_trials(cfg.trials, [&](std::int64_t t) {
      Subgroup H = fixed ? *fixed : [&] {
        Rng pick = Rng::substream(cfg.seed, "instance", static_cast<std::uint64_t>(t));
        return make_subgroup(G, {random_element(G, pick)});
      }();
      AbelianHspInstance instance = make_abelian_instance(H);
      Rng rng = Rng::substream(cfg.seed, "measurement", static_cast<std::uint64_t>(t));
      const AbelianHspResult result = solve_abelian_hsp(instance, rng, cfg.max_rounds);
      auto& s = results[static_cast<std::size_t>(t)];
      s.json = {{"trial", t}, {"hidden_generators", generators_json(H)},
                {"hidden_order", H.order()}};
      s.json.update(to_json(result.report));
      s.success = result.report.success;
      s.rounds = result.report.rounds;
      s.evaluations = result.report.oracle_evaluations;
    });
  }

  std::vector<std::int64_t> rounds, evaluations;
  std::int64_t successes = 0, first_batch = 0;
  Json trials = Json::array();
  for (auto& s : results) {
    successes += s.success;
    first_batch += s.first_batch;
    rounds.push_back(s.rounds);
    evaluations.push_back(s.evaluations);
    trials.push_back(std::move(s.json));
  }
  Json report = report_header("hsp");
  if (wreath) {
    report["wreath_n"] = cfg.wreath_n;
    report["batch_size"] = 4 * cfg.wreath_n;
  } else {
    report["group"] = cfg.group;
  }
  report["seed"] = cfg.seed;
  report["trials"] = cfg.trials;
  report["success_rate"] = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  if (wreath) {
    report["first_batch_success_rate"] =
        static_cast<double>(first_batch) / static_cast<double>(cfg.trials);
  }
  report["rounds"] = {{"mean", mean(rounds)},
                      {"median", median(rounds)},
                      {"max", *std::max_element(rounds.begin(), rounds.end())}};
  report["oracle_evaluations"] = {{"mean", mean(evaluations)}};
  report["reports"] = std::move(trials);
  emit(out, std::move(report), cfg);
  return kOk;
}

int cmd_attack(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
  if (cfg.budget < 1) throw UsageError("--budget must be at least 1");
  OracleLevel level;
  try {
    level = parse_oracle_level(cfg.oracle);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const CiphertextFrame frame = deserialize(read_file(cfg.in_path));
  AttackSetup setup;
  setup.level = level;
  setup.budget = cfg.budget;
  setup.header_suppressed = cfg.header_suppressed;
  if (!cfg.key_path.empty()) {
    const SessionKey key = SessionKey::from_bytes(read_file(cfg.key_path));
    setup.true_subgroup = make_subgroup(frame.group, {derive_generator(key, frame.group)});
  } else if (level != OracleLevel::kNone) {
    throw UsageError("--key is needed to build the membership and coset oracles");
  }
  if (!cfg.plaintext_path.empty()) {
    setup.true_plaintext = read_file(cfg.plaintext_path);
    const auto known = std::min<std::size_t>(static_cast<std::size_t>(cfg.known_prefix_bytes),
                                             setup.true_plaintext->size());
    setup.known_prefix.assign(setup.true_plaintext->begin(),
                              setup.true_plaintext->begin() + static_cast<std::ptrdiff_t>(known));
  } else if (cfg.known_prefix_bytes > 0) {
    throw UsageError("--known-prefix-bytes needs --plaintext");
  }

  std::vector<AttackReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_trials(cfg.trials, [&](std::int64_t t) {
    Rng rng = Rng::substream(cfg.seed, "attack", static_cast<std::uint64_t>(t));
    reports[static_cast<std::size_t>(t)] = eve_attack(frame, setup, rng);
  });

  std::int64_t successes = 0, correct = 0, exceeded = 0;
  std::vector<std::int64_t> work, tried;
  Json trials = Json::array();
  for (std::size_t t = 0; t < reports.size(); ++t) {
    const auto& r = reports[t];
    successes += r.success;
    correct += r.subgroup_correct;
    exceeded += r.budget_exceeded;
    work.push_back(r.work());
    tried.push_back(r.generators_tried);
    Json j = {{"trial", t}};
    j.update(to_json(r));
    trials.push_back(std::move(j));
  }
  const auto n = static_cast<double>(cfg.trials);
  Json report = report_header("attack");
  report["oracle_level"] = std::string(to_string(level));
  report["group"] = frame.group.to_string();
  report["element_count"] = frame.elements.size();
  report["budget"] = cfg.budget;
  report["seed"] = cfg.seed;
  report["trials"] = cfg.trials;
  report["success_rate"] = static_cast<double>(successes) / n;
  if (setup.true_subgroup) report["subgroup_correct_rate"] = static_cast<double>(correct) / n;
  report["mean_work"] = mean(work);
  report["mean_generators_tried"] = mean(tried);
  report["budget_exceeded_trials"] = exceeded;
  report["reports"] = std::move(trials);
  emit(out, std::move(report), cfg);
  return exceeded == cfg.trials ? kBudget : kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Hidden subgroup solvers and subgroup encryption at desk scale", "qgroup"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Root seed for all randomness")
        ->capture_default_str();
    sub->add_flag("--no-timestamp", cfg.no_timestamp, "Omit the timestamp from the report");
  };

  auto* keygen = app.add_subcommand("keygen", "Write a random session key");
  keygen->add_option("--bytes", cfg.bytes, "Key length (>= 8)")->capture_default_str();
  keygen->add_option("--out", cfg.out_path, "Key file")->required();
  common(keygen);

  auto* enc = app.add_subcommand("encrypt", "Encrypt a file into a ciphertext frame");
  enc->add_option("--group", cfg.group, "Invariant factors, e.g. 8,4,2")->required();
  enc->add_option("--key", cfg.key_path, "Key file")->required();
  enc->add_option("--in", cfg.in_path, "Plaintext file")->required();
  enc->add_option("--out", cfg.out_path, "Frame file")->required();
  enc->add_option("--chaff", cfg.chaff, "Chaff elements per data element")->capture_default_str();
  common(enc);

  auto* dec = app.add_subcommand("decrypt", "Decrypt a ciphertext frame");
  dec->add_option("--key", cfg.key_path, "Key file")->required();
  dec->add_option("--in", cfg.in_path, "Frame file")->required();
  dec->add_option("--out", cfg.out_path, "Plaintext file")->required();
  common(dec);

  auto* hsp = app.add_subcommand("hsp", "Run hidden subgroup solver trials");
  hsp->add_option("--group", cfg.group, "Abelian group, e.g. 8,2");
  hsp->add_option("--wreath", cfg.wreath_n, "Use W_n")->check(CLI::Range(1, kMaxWreathN));
  hsp->add_option("--gens", cfg.gens,
                  "Hidden subgroup generators separated by ';' (random per trial if omitted)");
  hsp->add_option("--trials", cfg.trials)->capture_default_str();
  hsp->add_option("--max-rounds", cfg.max_rounds)->capture_default_str();
  common(hsp);

  auto* attack = app.add_subcommand("attack", "Attack a ciphertext frame");
  attack->add_option("--frame", cfg.in_path, "Frame file")->required();
  attack->add_option("--oracle", cfg.oracle, "none, membership or coset")->required();
  attack->add_option("--key", cfg.key_path, "Key backing the oracles");
  attack->add_option("--plaintext", cfg.plaintext_path, "True plaintext, for grading");
  attack->add_option("--known-prefix-bytes", cfg.known_prefix_bytes,
                     "Leading plaintext bytes known to the attacker");
  attack->add_option("--budget", cfg.budget, "Candidate generators per trial")
      ->capture_default_str();
  attack->add_option("--trials", cfg.trials)->capture_default_str();
  attack->add_flag("--header-suppressed", cfg.header_suppressed,
                   "Attacker must guess the invariant factors");
  common(attack);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    if (sub == keygen) return cmd_keygen(cfg, out);
    if (sub == enc) return cmd_encrypt(cfg, out);
    if (sub == dec) return cmd_decrypt(cfg, out);
    if (sub == hsp) return cmd_hsp(cfg, out);
    return cmd_attack(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::kDegenerateKey) {
      err << "generate a new key with 'qgroup keygen' and retry\n";
    }
    return exit_code(e.code());
  }
}

}  // namespace qgroup
