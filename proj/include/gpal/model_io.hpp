#ifndef GPAL_MODEL_IO_HPP
#define GPAL_MODEL_IO_HPP

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "json.hpp"

#include "gpal/errors.hpp"
#include "gpal/model.hpp"

namespace gpal {

// Model files are JSON:
//
//   { "worlds": ["w1", "w2"], "agents": ["a"], "default": "0",
//     "valuation": { "w1": { "p": "1/2" } },
//     "access": { "a": [ ["w1", "w2", "7/10"] ] } }
//
// "default" is optional; without it every atom a formula mentions must be
// listed. Unlisted access pairs are 0.

namespace detail {

inline TruthValue json_value(const nlohmann::json& j, const std::string& where) {
  try {
    if (j.is_string()) return TruthValue::parse(j.get<std::string>());
    if (j.is_number_unsigned()) {
      return TruthValue::parse(std::to_string(j.get<std::uint64_t>()));
    }
  } catch (const RangeError& e) {
    throw ModelError(where + ": " + e.what());
  }
  throw ModelError(where + ": expected a rational string like \"1/2\"");
}

inline std::vector<std::string> json_names(const nlohmann::json& doc,
                                           const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw ModelError(std::string("missing array '") + key + "'");
  }
  std::vector<std::string> out;
  for (const auto& item : doc[key]) {
    if (!item.is_string()) {
      throw ModelError(std::string("'") + key + "' must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline KripkeModel model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ModelError("model document must be an object");
  auto worlds = detail::json_names(doc, "worlds");
  auto agents = detail::json_names(doc, "agents");
  if (worlds.empty()) throw ModelError("model has no worlds");
  std::optional<TruthValue> fallback;
  if (doc.contains("default") && !doc["default"].is_null()) {
    fallback = detail::json_value(doc["default"], "default");
  }
  KripkeModel m(std::move(worlds), std::move(agents), fallback);

  if (doc.contains("valuation")) {
    const auto& val = doc["valuation"];
    if (!val.is_object()) throw ModelError("'valuation' must be an object");
    for (const auto& [world, atoms] : val.items()) {
      const std::size_t w = m.require_world(world);
      if (!atoms.is_object()) {
        throw ModelError("valuation of '" + world + "' must be an object");
      }
      for (const auto& [p, v] : atoms.items()) {
        m.set_value(w, p, detail::json_value(v, "valuation " + world + "." + p));
      }
    }
  }

  if (doc.contains("access")) {
    const auto& acc = doc["access"];
    if (!acc.is_object()) throw ModelError("'access' must be an object");
    for (const auto& [agent, triples] : acc.items()) {
      const std::size_t a = m.require_agent(agent);
      if (!triples.is_array()) {
        throw ModelError("access of '" + agent + "' must be an array");
      }
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& t : triples) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() ||
            !t[1].is_string()) {
          throw ModelError("access triples are [from, to, value]");
        }
        const std::size_t from = m.require_world(t[0].get<std::string>());
        const std::size_t to = m.require_world(t[1].get<std::string>());
        if (!seen.emplace(from, to).second) {
          throw ModelError("duplicate access triple for agent '" + agent +
                           "': " + t[0].get<std::string>() + " -> " +
                           t[1].get<std::string>());
        }
        m.set_access(a, from, to, detail::json_value(t[2], "access " + agent));
      }
    }
  }
  return m;
}

inline KripkeModel parse_model(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("invalid JSON: ") + e.what());
  }
  return model_from_json(doc);
}

inline KripkeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

/// Model document; access lists only nonzero pairs.
inline nlohmann::ordered_json model_to_json(const KripkeModel& m) {
  nlohmann::ordered_json doc;
  doc["worlds"] = m.worlds();
  doc["agents"] = m.agents();
  if (m.default_value()) doc["default"] = m.default_value()->to_string();
  nlohmann::ordered_json val = nlohmann::ordered_json::object();
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    nlohmann::ordered_json atoms = nlohmann::ordered_json::object();
    for (const std::string& p : m.atoms()) {
      const auto* col = m.column(p);
      if (col && (*col)[w]) atoms[p] = (*col)[w]->to_string();
    }
    val[m.worlds()[w]] = atoms;
  }
  doc["valuation"] = val;
  nlohmann::ordered_json acc = nlohmann::ordered_json::object();
  for (std::size_t a = 0; a < m.agents().size(); ++a) {
    nlohmann::ordered_json triples = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.world_count(); ++i) {
      for (std::size_t j = 0; j < m.world_count(); ++j) {
        const TruthValue& v = m.access(a, i, j);
        if (!v.is_zero()) {
          triples.push_back({m.worlds()[i], m.worlds()[j], v.to_string()});
        }
      }
    }
    acc[m.agents()[a]] = triples;
  }
  doc["access"] = acc;
  return doc;
}

inline std::string dump_model(const KripkeModel& m, int indent = 2) {
  return model_to_json(m).dump(indent);
}

}  // namespace gpal

#endif  // GPAL_MODEL_IO_HPP
