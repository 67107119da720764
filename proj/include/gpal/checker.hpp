#ifndef GPAL_CHECKER_HPP
#define GPAL_CHECKER_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "gpal/errors.hpp"
#include "gpal/formula.hpp"
#include "gpal/model.hpp"
#include "gpal/truth_value.hpp"

namespace gpal {

enum class SearchMode { Exhaustive, Random };

/// A finite family of models: up to max_worlds worlds, every accessibility
/// degree and atom value drawn from the chain.
struct ModelSpaceParams {
  std::size_t max_worlds = 1;
  std::vector<TruthValue> chain = {TruthValue::zero(), TruthValue::one()};
  std::vector<std::string> agents = {"a"};
  std::vector<std::string> atoms = {"p"};
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t sample_count = 100;
  std::uint64_t seed = 0;
  /// Largest model count an exhaustive search may enumerate.
  std::uint64_t budget = 1'000'000;
  /// Cap on fresh intermediate values added next to injected constants.
  std::size_t fresh_cap = 4;

  void validate() const {
    if (max_worlds == 0) throw Error("max_worlds must be positive");
    if (agents.empty()) throw Error("at least one agent is required");
    if (atoms.empty()) throw Error("at least one atom is required");
    std::set<TruthValue> c(chain.begin(), chain.end());
    if (!c.count(TruthValue::zero()) || !c.count(TruthValue::one())) {
      throw Error("chain must contain 0 and 1");
    }
  }
};

/// Parses a comma-separated chain such as "0,1/2,1".
inline std::vector<TruthValue> parse_chain(const std::string& text) {
  std::vector<TruthValue> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    out.push_back(TruthValue::parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Params document: {"max_worlds": 2, "chain": ["0", "1/2", "1"],
/// "agents": ["a"], "atoms": ["p"], "mode": "exhaustive" | "random",
/// "samples": 100, "seed": 0, "budget": 1000000}. Missing keys keep defaults.
inline ModelSpaceParams params_from_json(const nlohmann::json& doc) {
  ModelSpaceParams p;
  try {
    if (doc.contains("max_worlds")) p.max_worlds = doc["max_worlds"].get<std::size_t>();
    if (doc.contains("chain")) {
      p.chain.clear();
      for (const auto& v : doc["chain"]) {
        p.chain.push_back(TruthValue::parse(v.is_string() ? v.get<std::string>()
                                                          : v.dump()));
      }
    }
    if (doc.contains("agents")) p.agents = doc["agents"].get<std::vector<std::string>>();
    if (doc.contains("atoms")) p.atoms = doc["atoms"].get<std::vector<std::string>>();
    if (doc.contains("mode")) {
      const auto mode = doc["mode"].get<std::string>();
      if (mode == "exhaustive") {
        p.mode = SearchMode::Exhaustive;
      } else if (mode == "random") {
        p.mode = SearchMode::Random;
      } else {
        throw Error("unknown mode '" + mode + "'");
      }
    }
    if (doc.contains("samples")) p.sample_count = doc["samples"].get<std::uint64_t>();
    if (doc.contains("seed")) p.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("budget")) p.budget = doc["budget"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad params document: ") + e.what());
  }
  p.validate();
  return p;
}

/// Adds the constants not already in the chain, plus up to `cap` fresh
/// midpoints between each added constant and its neighbours, so strict
/// value formulas get exercised on both sides of their thresholds.
inline std::vector<TruthValue> augment_chain(std::vector<TruthValue> chain,
                                             const std::set<TruthValue>& constants,
                                             std::size_t cap) {
  std::set<TruthValue> values(chain.begin(), chain.end());
  std::vector<TruthValue> added;
  for (const TruthValue& c : constants) {
    if (values.insert(c).second) added.push_back(c);
  }
  std::size_t fresh = 0;
  for (const TruthValue& c : added) {
    auto it = values.find(c);
    std::vector<TruthValue> mids;
    if (it != values.begin()) {
      mids.push_back(TruthValue::from_rational((std::prev(it)->rational() +
                                                c.rational()) / 2));
    }
    if (std::next(it) != values.end()) {
      mids.push_back(TruthValue::from_rational((std::next(it)->rational() +
                                                c.rational()) / 2));
    }
    for (const TruthValue& m : mids) {
      if (fresh >= cap) break;
      if (values.insert(m).second) ++fresh;
    }
  }
  return {values.begin(), values.end()};
}

/// Indexed view of a model space. Exhaustive spaces are ordered by world
/// count, then by the accessibility digits (agent, from, to) and the
/// valuation digits (world, atom) read as a number in base |chain| with the
/// last digit fastest. Random spaces draw sample i from a generator seeded
/// by (seed, i), uniformly over the whole declared space.
class ModelSpace {
 public:
  explicit ModelSpace(ModelSpaceParams params) : p_(std::move(params)) {
    p_.validate();
    std::set<TruthValue> sorted(p_.chain.begin(), p_.chain.end());
    p_.chain.assign(sorted.begin(), sorted.end());
    for (std::size_t n = 1; n <= p_.max_worlds; ++n) {
      BigInt c = boost::multiprecision::pow(BigInt(p_.chain.size()),
                                            static_cast<unsigned>(digits(n)));
      counts_.push_back(c);
      total_ += c;
    }
    if (p_.mode == SearchMode::Exhaustive && total_ > p_.budget) {
      throw BudgetExceeded(total_.str(), std::to_string(p_.budget));
    }
  }

  const ModelSpaceParams& params() const { return p_; }

  /// Number of models in the declared space (not the sample count).
  const BigInt& space_size() const { return total_; }

  /// Number of models this space yields.
  std::uint64_t size() const {
    if (p_.mode == SearchMode::Random) return p_.sample_count;
    return static_cast<std::uint64_t>(total_);
  }

  KripkeModel model(std::uint64_t index) const {
    if (p_.mode == SearchMode::Random) return sample(index);
    std::uint64_t rest = index;
    for (std::size_t n = 1; n <= p_.max_worlds; ++n) {
      const auto c = static_cast<std::uint64_t>(counts_[n - 1]);
      if (rest < c) {
        std::vector<std::size_t> d(digits(n));
        for (std::size_t k = d.size(); k-- > 0;) {
          d[k] = rest % p_.chain.size();
          rest /= p_.chain.size();
        }
        return build(n, d);
      }
      rest -= c;
    }
    throw Error("model index out of range");
  }

 private:
  std::size_t digits(std::size_t n) const {
    return p_.agents.size() * n * n + n * p_.atoms.size();
  }

  KripkeModel build(std::size_t n, const std::vector<std::size_t>& d) const {
    std::vector<std::string> worlds;
    for (std::size_t w = 0; w < n; ++w) worlds.push_back("w" + std::to_string(w + 1));
    KripkeModel m(std::move(worlds), p_.agents);
    std::size_t k = 0;
    for (std::size_t a = 0; a < p_.agents.size(); ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m.set_access(a, i, j, p_.chain[d[k++]]);
      }
    }
    for (std::size_t w = 0; w < n; ++w) {
      for (const std::string& atom : p_.atoms) m.set_value(w, atom, p_.chain[d[k++]]);
    }
    return m;
  }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  KripkeModel sample(std::uint64_t index) const {
    std::mt19937_64 rng(splitmix(p_.seed ^ splitmix(index)));
    // World count weighted by the number of models of that size.
    const double base = std::log(static_cast<double>(p_.chain.size()));
    std::vector<double> logw;
    for (std::size_t n = 1; n <= p_.max_worlds; ++n) {
      logw.push_back(static_cast<double>(digits(n)) * base);
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    std::vector<double> weights;
    for (double l : logw) weights.push_back(std::exp(l - top));
    std::discrete_distribution<std::size_t> pick_n(weights.begin(), weights.end());
    const std::size_t n = pick_n(rng) + 1;
    std::uniform_int_distribution<std::size_t> pick_v(0, p_.chain.size() - 1);
    std::vector<std::size_t> d(digits(n));
    for (auto& x : d) x = pick_v(rng);
    return build(n, d);
  }

  ModelSpaceParams p_;
  std::vector<BigInt> counts_;
  BigInt total_ = 0;
};

/// Calls fn(index, model) for every model of the space, in order, until it
/// returns false.
inline void enumerate_models(
    const ModelSpaceParams& params,
    const std::function<bool(std::uint64_t, const KripkeModel&)>& fn) {
  ModelSpace space(params);
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    if (!fn(i, space.model(i))) return;
  }
}

/// A world of a model where a check failed.
struct Witness {
  std::uint64_t index;  // position in the model space
  KripkeModel model;
  std::size_t world;
  TruthValue value;
  /// Second formula's value, for equivalence checks.
  std::optional<TruthValue> other;

  const std::string& world_name() const { return model.worlds()[world]; }
};

struct Verdict {
  enum class Status { ValidOnSuite, Refuted };
  Status status = Status::ValidOnSuite;
  std::optional<Witness> witness;
  std::uint64_t models_checked = 0;
  std::vector<TruthValue> chain;

  bool valid() const { return status == Status::ValidOnSuite; }
};

/// Outcome of one check at one model: the failing world and values.
struct Failure {
  std::size_t world;
  TruthValue value;
  std::optional<TruthValue> other;
};

/// Runs `checks` independent predicates over every model of the space, all
/// sharing one Evaluator per model, and returns, for each, the first failing model in space order. Work is split
/// into chunks across threads; the reported witness never depends on the
/// schedule.
inline std::vector<Verdict> search_space(
    const ModelSpace& space, std::size_t checks,
    const std::function<std::optional<Failure>(Evaluator&, std::size_t)>& check) {
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t total = space.size();
  std::vector<std::atomic<std::uint64_t>> best(checks);
  for (auto& b : best) b = kNone;
  std::vector<std::optional<Witness>> witnesses(checks);
  std::mutex mu;

  const std::uint64_t chunk = 256;
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    std::optional<Evaluator> ev;
    for (;;) {
      const std::uint64_t start = next.fetch_add(chunk);
      if (start >= total) return;
      const std::uint64_t end = std::min(total, start + chunk);
      for (std::uint64_t i = start; i < end; ++i) {
        std::optional<KripkeModel> model;
        for (std::size_t k = 0; k < checks; ++k) {
          if (best[k].load() <= i) continue;
          if (!model) {
            model.emplace(space.model(i));
            if (ev) {
              ev->reset(*model);
            } else {
              ev.emplace(*model);
            }
          }
          if (auto f = check(*ev, k)) {
            std::lock_guard<std::mutex> lock(mu);
            if (i < best[k].load()) {
              best[k] = i;
              witnesses[k] = Witness{i, *model, f->world, f->value, f->other};
            }
          }
        }
      }
    }
  };
  const unsigned threads =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  if (threads == 1 || total < 2 * chunk) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<Verdict> out(checks);
  for (std::size_t k = 0; k < checks; ++k) {
    out[k].chain = space.params().chain;
    if (witnesses[k]) {
      out[k].status = Verdict::Status::Refuted;
      out[k].models_checked = witnesses[k]->index + 1;
      out[k].witness = std::move(witnesses[k]);
    } else {
      out[k].models_checked = total;
    }
  }
  return out;
}

namespace detail {

/// Adds the constants of the formulas to the chain, and their atoms and
/// agents to the signature, so every formula evaluates on every model.
inline ModelSpaceParams with_constants(ModelSpaceParams params,
                                       const std::vector<Formula>& formulas) {
  std::set<TruthValue> constants;
  std::set<std::string> atoms(params.atoms.begin(), params.atoms.end());
  std::set<std::string> agents(params.agents.begin(), params.agents.end());
  for (const Formula& f : formulas) {
    collect_constants(f, constants);
    collect_atoms(f, atoms);
    collect_agents(f, agents);
  }
  for (const auto& a : atoms) {
    if (std::find(params.atoms.begin(), params.atoms.end(), a) == params.atoms.end()) {
      params.atoms.push_back(a);
    }
  }
  for (const auto& a : agents) {
    if (std::find(params.agents.begin(), params.agents.end(), a) == params.agents.end()) {
      params.agents.push_back(a);
    }
  }
  params.chain = augment_chain(params.chain, constants, params.fresh_cap);
  return params;
}

}  // namespace detail

/// Global validity of each formula on every model of the space. Constants
/// occurring in any of the formulas are added to the chain first, and
/// missing atoms and agents to the signature.
inline std::vector<Verdict> check_validity_batch(const std::vector<Formula>& formulas,
                                                 const ModelSpaceParams& params) {
  ModelSpace space(detail::with_constants(params, formulas));
  return search_space(space, formulas.size(),
                      [&](Evaluator& ev, std::size_t k) -> std::optional<Failure> {
                        const auto values = ev.values(formulas[k]);
                        for (std::size_t w = 0; w < values.size(); ++w) {
                          if (!values[w].is_one()) return Failure{w, values[w], {}};
                        }
                        return std::nullopt;
                      });
}

inline Verdict check_validity(const Formula& f, const ModelSpaceParams& params) {
  return check_validity_batch({f}, params).front();
}

/// Value equality of each pair at every world of every model of the space.
inline std::vector<Verdict> check_equivalence_batch(
    const std::vector<std::pair<Formula, Formula>>& pairs,
    const ModelSpaceParams& params) {
  std::vector<Formula> all;
  for (const auto& [f, g] : pairs) {
    all.push_back(f);
    all.push_back(g);
  }
  ModelSpace space(detail::with_constants(params, all));
  return search_space(space, pairs.size(),
                      [&](Evaluator& ev, std::size_t k) -> std::optional<Failure> {
                        ev.values(pairs[k].first);
                        const auto b = ev.values(pairs[k].second);
                        const auto a = ev.values(pairs[k].first);
                        for (std::size_t w = 0; w < a.size(); ++w) {
                          if (a[w] != b[w]) return Failure{w, a[w], b[w]};
                        }
                        return std::nullopt;
                      });
}

inline Verdict check_equivalence(const Formula& f, const Formula& g,
                                 const ModelSpaceParams& params) {
  return check_equivalence_batch({{f, g}}, params).front();
}

}  // namespace gpal

#endif  // GPAL_CHECKER_HPP
