#ifndef GPAL_MODEL_HPP
#define GPAL_MODEL_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpal/errors.hpp"
#include "gpal/formula.hpp"
#include "gpal/language.hpp"
#include "gpal/truth_value.hpp"

namespace gpal {

/// Finite multi-agent Goedel-Kripke model.
///
/// Worlds and agents are ordered; every agent has a total accessibility
/// function over worlds x worlds (initially 0). Atom values are stored per
/// world; an atom without a stored value falls back to the model default,
/// and evaluating it is an error when there is none. A model with no worlds
/// is only produced by restriction.
class KripkeModel {
 public:
  KripkeModel(std::vector<std::string> worlds, std::vector<std::string> agents,
              std::optional<TruthValue> default_value = std::nullopt)
      : worlds_(std::move(worlds)),
        agents_(std::move(agents)),
        default_(std::move(default_value)) {
    if (agents_.empty()) throw ModelError("model has no agents");
    check_unique(worlds_, "world");
    check_unique(agents_, "agent");
    access_.assign(agents_.size(),
                   std::vector<TruthValue>(worlds_.size() * worlds_.size()));
  }

  std::size_t world_count() const { return worlds_.size(); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::vector<std::string>& agents() const { return agents_; }
  /// Atoms with at least one stored value, in insertion order.
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::optional<TruthValue>& default_value() const { return default_; }

  std::optional<std::size_t> world_index(std::string_view name) const {
    return index_of(worlds_, name);
  }
  std::optional<std::size_t> agent_index(std::string_view name) const {
    return index_of(agents_, name);
  }

  std::size_t require_world(std::string_view name) const {
    if (auto i = world_index(name)) return *i;
    throw ModelError("unknown world '" + std::string(name) + "'");
  }
  std::size_t require_agent(std::string_view name) const {
    if (auto i = agent_index(name)) return *i;
    throw ModelError("unknown agent '" + std::string(name) + "'");
  }

  const TruthValue& access(std::size_t agent, std::size_t from,
                           std::size_t to) const {
    return access_[agent][from * worlds_.size() + to];
  }
  const TruthValue& access(std::string_view agent, std::string_view from,
                           std::string_view to) const {
    return access(require_agent(agent), require_world(from),
                  require_world(to));
  }

  void set_access(std::size_t agent, std::size_t from, std::size_t to,
                  TruthValue v) {
    access_.at(agent).at(from * worlds_.size() + to) = std::move(v);
  }
  void set_access(std::string_view agent, std::string_view from,
                  std::string_view to, TruthValue v) {
    set_access(require_agent(agent), require_world(from), require_world(to),
               std::move(v));
  }

  void set_value(std::size_t world, std::string_view atom, TruthValue v) {
    if (world >= worlds_.size()) throw ModelError("world index out of range");
    std::size_t a = atom_slot(atom);
    valuation_[a][world] = std::move(v);
  }
  void set_value(std::string_view world, std::string_view atom, TruthValue v) {
    set_value(require_world(world), atom, std::move(v));
  }

  /// Stored value of the atom at the world, else the default.
  std::optional<TruthValue> value(std::size_t world,
                                  std::string_view atom) const {
    if (auto a = index_of(atoms_, atom)) {
      if (const auto& v = valuation_[*a][world]) return v;
    }
    return default_;
  }

  /// Column of stored values for one atom (nullopt where unset), or nullptr
  /// if the atom has no stored value anywhere.
  const std::vector<std::optional<TruthValue>>* column(
      std::string_view atom) const {
    if (auto a = index_of(atoms_, atom)) return &valuation_[*a];
    return nullptr;
  }

  /// The submodel on the given worlds (ascending indices), with access and
  /// valuation inherited pointwise.
  KripkeModel induced(const std::vector<std::size_t>& keep) const {
    std::vector<std::string> names;
    names.reserve(keep.size());
    for (std::size_t w : keep) names.push_back(worlds_.at(w));
    KripkeModel sub(std::move(names), agents_, default_);
    const std::size_t n = keep.size();
    for (std::size_t a = 0; a < agents_.size(); ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          sub.access_[a][i * n + j] = access(a, keep[i], keep[j]);
        }
      }
    }
    sub.atoms_ = atoms_;
    sub.valuation_.resize(atoms_.size());
    for (std::size_t p = 0; p < atoms_.size(); ++p) {
      sub.valuation_[p].reserve(n);
      for (std::size_t w : keep) sub.valuation_[p].push_back(valuation_[p][w]);
    }
    return sub;
  }

  friend bool operator==(const KripkeModel& a, const KripkeModel& b) {
    if (a.worlds_ != b.worlds_ || a.agents_ != b.agents_ ||
        a.default_ != b.default_ || a.access_ != b.access_) {
      return false;
    }
    std::vector<std::string> atoms = a.atoms_;
    atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
    for (const std::string& p : atoms) {
      for (std::size_t w = 0; w < a.worlds_.size(); ++w) {
        if (a.value(w, p) != b.value(w, p)) return false;
      }
    }
    return true;
  }

 private:
  static std::optional<std::size_t> index_of(
      const std::vector<std::string>& v, std::string_view name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == name) return i;
    }
    return std::nullopt;
  }

  static void check_unique(const std::vector<std::string>& v,
                           const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].empty()) throw ModelError(std::string("empty ") + what + " name");
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[i] == v[j]) {
          throw ModelError(std::string("duplicate ") + what + " '" + v[i] +
                           "'");
        }
      }
    }
  }

  std::size_t atom_slot(std::string_view atom) {
    if (auto a = index_of(atoms_, atom)) return *a;
    atoms_.emplace_back(atom);
    valuation_.emplace_back(worlds_.size());
    return atoms_.size() - 1;
  }

  std::vector<std::string> worlds_;
  std::vector<std::string> agents_;
  std::optional<TruthValue> default_;
  std::vector<std::vector<TruthValue>> access_;
  std::vector<std::string> atoms_;
  std::vector<std::vector<std::optional<TruthValue>>> valuation_;
};

/// Bottom-up evaluation at every world of one model at once. Results are
/// memoized per node and restricted submodels per surviving-world set, so
/// one Evaluator can serve many formulas over the same model. The model must
/// outlive it (or the next reset).
class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& m) : m_(&m) {}
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  const KripkeModel& model() const { return *m_; }

  /// Rebinds to another model, keeping allocated storage.
  void reset(const KripkeModel& m);

  /// Values of f at every world. Valid until the next call on this
  /// evaluator.
  std::span<const TruthValue> values(const Formula& f) {
    // Memo keys are node addresses; holding the root keeps them unique.
    if (!memo_find(f.id())) roots_.push_back(f);
    const std::size_t at = slot(f);
    return {store_.data() + at, m_->world_count()};
  }

  std::vector<TruthValue> run(const Formula& f) {
    const auto v = values(f);
    return {v.begin(), v.end()};
  }

 private:
  std::size_t slot(const Formula& f) {
    const Node* key = f.id();
    if (const std::size_t* hit = memo_find(key)) return *hit;
    const std::size_t at = compute(f);
    memo_insert(key, at);
    return at;
  }

  std::size_t grow() {
    const std::size_t at = store_.size();
    store_.resize(at + m_->world_count());
    return at;
  }

  std::size_t compute(const Formula& f) {
    const std::size_t n = m_->world_count();
    switch (f.kind()) {
      case Kind::Bottom: {
        const std::size_t out = grow();
        std::fill_n(store_.begin() + out, n, TruthValue::zero());
        return out;
      }
      case Kind::Constant: {
        const std::size_t out = grow();
        std::fill_n(store_.begin() + out, n, f.value());
        return out;
      }
      case Kind::Atom: {
        const auto* col = m_->column(f.name());
        const std::size_t out = grow();
        for (std::size_t w = 0; w < n; ++w) {
          const std::optional<TruthValue>* v = col ? &(*col)[w] : nullptr;
          if (v && *v) {
            store_[out + w] = **v;
          } else if (m_->default_value()) {
            store_[out + w] = *m_->default_value();
          } else {
            throw ModelError("atom '" + f.name() + "' has no value at world '" +
                             m_->worlds()[w] + "' and the model has no default");
          }
        }
        return out;
      }
      case Kind::And:
      case Kind::Implies: {
        const std::size_t a = slot(f.left());
        const std::size_t b = slot(f.right());
        const std::size_t out = grow();
        for (std::size_t w = 0; w < n; ++w) {
          store_[out + w] = f.kind() == Kind::And
                                ? tnorm(store_[a + w], store_[b + w])
                                : residuum(store_[a + w], store_[b + w]);
        }
        return out;
      }
      case Kind::Delta: {
        const std::size_t a = slot(f.left());
        const std::size_t out = grow();
        for (std::size_t w = 0; w < n; ++w) store_[out + w] = delta(store_[a + w]);
        return out;
      }
      case Kind::ValEq:
      case Kind::ValGt: {
        const std::size_t a = slot(f.left());
        const std::size_t out = grow();
        for (std::size_t w = 0; w < n; ++w) {
          const bool holds = f.kind() == Kind::ValEq ? store_[a + w] == f.value()
                                                     : store_[a + w] > f.value();
          store_[out + w] = holds ? TruthValue::one() : TruthValue::zero();
        }
        return out;
      }
      case Kind::Know: {
        const std::size_t agent = m_->require_agent(f.name());
        const std::size_t a = slot(f.left());
        const std::size_t out = grow();
        for (std::size_t w = 0; w < n; ++w) {
          TruthValue v = TruthValue::one();
          for (std::size_t u = 0; u < n; ++u) {
            v = tnorm(v, residuum(m_->access(agent, w, u), store_[a + u]));
          }
          store_[out + w] = std::move(v);
        }
        return out;
      }
      case Kind::Announce: {
        const std::size_t lambda = slot(f.left());
        std::vector<std::size_t> keep;
        for (std::size_t w = 0; w < n; ++w) {
          if (store_[lambda + w].is_one()) keep.push_back(w);
        }
        if (keep.size() == n) return slot(f.right());
        const std::size_t out = grow();
        std::fill_n(store_.begin() + out, n, TruthValue::one());
        if (!keep.empty()) announce_into(f.right(), std::move(keep), out);
        return out;
      }
    }
    return grow();
  }

  void announce_into(const Formula& body, std::vector<std::size_t> keep,
                     std::size_t out);

  // Open-addressing memo from node to store offset; entries from older
  // generations count as empty, so reset is O(1).
  const std::size_t* memo_find(const Node* key) const {
    if (keys_.empty()) return nullptr;
    const std::size_t mask = keys_.size() - 1;
    for (std::size_t i = probe(key) & mask;; i = (i + 1) & mask) {
      if (gens_[i] != gen_) return nullptr;
      if (keys_[i] == key) return &offsets_[i];
    }
  }

  void memo_insert(const Node* key, std::size_t at) {
    if (2 * (used_ + 1) > keys_.size()) rehash(std::max<std::size_t>(64, 2 * keys_.size()));
    const std::size_t mask = keys_.size() - 1;
    std::size_t i = probe(key) & mask;
    while (gens_[i] == gen_) i = (i + 1) & mask;
    keys_[i] = key;
    offsets_[i] = at;
    gens_[i] = gen_;
    ++used_;
  }

  void rehash(std::size_t capacity) {
    std::vector<const Node*> keys(capacity);
    std::vector<std::size_t> offsets(capacity);
    std::vector<std::uint32_t> gens(capacity, 0);
    const std::uint32_t next = gen_ + 1;
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      if (gens_[k] != gen_) continue;
      std::size_t i = probe(keys_[k]) & (capacity - 1);
      while (gens[i] == next) i = (i + 1) & (capacity - 1);
      keys[i] = keys_[k];
      offsets[i] = offsets_[k];
      gens[i] = next;
    }
    keys_ = std::move(keys);
    offsets_ = std::move(offsets);
    gens_ = std::move(gens);
    gen_ = next;
  }

  static std::size_t probe(const Node* key) {
    auto x = reinterpret_cast<std::uintptr_t>(key);
    x ^= x >> 17;
    x *= 0x9e3779b97f4a7c15ull;
    return static_cast<std::size_t>(x ^ (x >> 29));
  }

  struct Sub;
  Sub& submodel(std::vector<std::size_t> keep);

  const KripkeModel* m_;
  std::vector<TruthValue> store_;
  std::vector<const Node*> keys_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> gens_;
  std::uint32_t gen_ = 1;
  std::size_t used_ = 0;
  std::map<std::vector<std::size_t>, std::unique_ptr<Sub>> subs_;
  std::vector<Formula> roots_;
};

struct Evaluator::Sub {
  Sub(const KripkeModel& base, std::vector<std::size_t> k)
      : keep(std::move(k)), model(base.induced(keep)), ev(model) {}
  std::vector<std::size_t> keep;
  KripkeModel model;
  Evaluator ev;
};

inline Evaluator::~Evaluator() = default;

inline void Evaluator::reset(const KripkeModel& m) {
  m_ = &m;
  store_.clear();
  subs_.clear();
  roots_.clear();
  used_ = 0;
  if (++gen_ == 0) {
    std::fill(gens_.begin(), gens_.end(), 0);
    gen_ = 1;
  }
}

inline Evaluator::Sub& Evaluator::submodel(std::vector<std::size_t> keep) {
  auto it = subs_.find(keep);
  if (it == subs_.end()) {
    auto sub = std::make_unique<Sub>(*m_, keep);
    it = subs_.emplace(std::move(keep), std::move(sub)).first;
  }
  return *it->second;
}

inline void Evaluator::announce_into(const Formula& body, std::vector<std::size_t> keep,
                                     std::size_t out) {
  Sub& sub = submodel(std::move(keep));
  const auto values = sub.ev.values(body);
  for (std::size_t i = 0; i < sub.keep.size(); ++i) store_[out + sub.keep[i]] = values[i];
}

/// Truth degree of f at every world, in world order.
inline std::vector<TruthValue> evaluate_all(const KripkeModel& m,
                                            const Formula& f) {
  Evaluator ev(m);
  return ev.run(f);
}

inline TruthValue evaluate(const KripkeModel& m, std::size_t world,
                           const Formula& f) {
  if (world >= m.world_count()) throw ModelError("world index out of range");
  return evaluate_all(m, f)[world];
}

inline TruthValue evaluate(const KripkeModel& m, std::string_view world,
                           const Formula& f) {
  return evaluate(m, m.require_world(world), f);
}

inline bool locally_valid(const KripkeModel& m, std::string_view world,
                          const Formula& f) {
  return evaluate(m, world, f).is_one();
}

inline bool globally_valid(const KripkeModel& m, const Formula& f) {
  Evaluator ev(m);
  for (const TruthValue& v : ev.values(f)) {
    if (!v.is_one()) return false;
  }
  return true;
}

/// A model restricted to the worlds where an announcement body takes value 1.
class RestrictedModel {
 public:
  RestrictedModel(KripkeModel base, std::vector<std::size_t> surviving)
      : base_(std::move(base)),
        surviving_(std::move(surviving)),
        induced_(base_.induced(surviving_)) {}

  const KripkeModel& base() const { return base_; }
  /// Indices into base().worlds(), ascending.
  const std::vector<std::size_t>& surviving() const { return surviving_; }
  /// The restricted model itself, usable anywhere a KripkeModel is.
  const KripkeModel& model() const { return induced_; }
  bool empty() const { return surviving_.empty(); }

 private:
  KripkeModel base_;
  std::vector<std::size_t> surviving_;
  KripkeModel induced_;
};

/// M|lambda. Throws Error if lambda is not a legal announcement body.
inline RestrictedModel restrict(const KripkeModel& m, const Formula& lambda) {
  if (!is_announcement_body(lambda)) {
    throw Error("'" + print(lambda) + "' is not an announcement body");
  }
  const auto values = evaluate_all(m, lambda);
  std::vector<std::size_t> keep;
  for (std::size_t w = 0; w < values.size(); ++w) {
    if (values[w].is_one()) keep.push_back(w);
  }
  return RestrictedModel(m, std::move(keep));
}

}  // namespace gpal

#endif  // GPAL_MODEL_HPP
