#include "gasketpile/io.hpp"

#include <cctype>
#include <istream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gasketpile {

namespace {

Configuration checked_config(int level, const std::string& boundary, std::vector<std::int64_t> chips) {
  if (level < 0) throw std::invalid_argument("negative level");
  const GasketGraph g = build_gasket(level, parse_boundary(boundary));
  if (static_cast<Index>(chips.size()) != g.size())
    throw std::invalid_argument("expected " + std::to_string(g.size()) + " chip counts, got " +
                                std::to_string(chips.size()));
  ChipVector v(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    if (chips[static_cast<std::size_t>(i)] < 0) throw std::invalid_argument("negative chip count");
    v(i) = chips[static_cast<std::size_t>(i)];
  }
  return Configuration::from_chips(g, std::move(v));
}

}  // namespace

Json graph_to_json(const GasketGraph& g) {
  Json j;
  j["level"] = g.level();
  j["boundary"] = to_string(g.boundary());
  Json verts = Json::array();
  for (const auto& c : g.vertices()) verts.push_back({c.a, c.b});
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  Json beta = Json::array();
  for (Index v = 0; v < g.size(); ++v) beta.push_back(g.beta(v));
  j["beta"] = std::move(beta);
  return j;
}

Json chips_to_json(const ChipVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json config_to_json(const Configuration& c) {
  Json j;
  j["level"] = c.level;
  j["boundary"] = to_string(c.boundary);
  j["chips"] = chips_to_json(c.chips);
  return j;
}

Json invariants_to_json(const InvariantFactors& f) {
  Json j;
  Json factors = Json::array();
  for (const auto& d : f.factors) factors.push_back(d.str());
  j["invariant_factors"] = std::move(factors);
  j["free_rank"] = f.free_rank;
  j["order"] = f.order().str();
  return j;
}

Configuration config_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("chips"))
    throw std::invalid_argument("configuration JSON needs \"level\" and \"chips\"");
  const std::string boundary = j.contains("boundary") ? j.at("boundary").get<std::string>() : "normal";
  return checked_config(j.at("level").get<int>(), boundary, j.at("chips").get<std::vector<std::int64_t>>());
}

std::string config_to_text(const Configuration& c) {
  std::ostringstream os;
  os << c.level << ' ' << to_string(c.boundary);
  for (Index i = 0; i < c.chips.size(); ++i) os << ' ' << c.chips(i);
  return os.str();
}

Configuration config_from_text(const std::string& s) {
  std::istringstream is(s);
  int level;
  std::string boundary;
  if (!(is >> level >> boundary)) throw std::invalid_argument("text configuration needs 'level boundary chips...'");
  std::vector<std::int64_t> chips;
  std::int64_t x;
  while (is >> x) chips.push_back(x);
  if (!is.eof()) throw std::invalid_argument("malformed chip count in text configuration");
  return checked_config(level, boundary, std::move(chips));
}

Configuration parse_config(const std::string& s) {
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{') {
      try {
        return config_from_json(Json::parse(s));
      } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("bad configuration JSON: ") + e.what());
      }
    }
    return config_from_text(s);
  }
  throw std::invalid_argument("empty configuration input");
}

Configuration read_config(std::istream& in) {
  const std::string s{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_config(s);
}

}  // namespace gasketpile
