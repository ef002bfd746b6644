#include "tollbooth/io.hpp"

#include <fstream>
#include <sstream>

#include "tollbooth/errors.hpp"

namespace tollbooth {

using nlohmann::json;

Rational rational_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return parse_rational(std::to_string(value.get<long long>()));
  throw ValidationError("expected a rational string, got " + value.dump());
}

Instance instance_from_json(const json& doc) {
  try {
    const int vertices = doc.at("vertices").get<int>();
    std::vector<Edge> edges;
    for (const json& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ValidationError("edge must be [u, v]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    std::vector<Customer> customers;
    if (doc.contains("customers")) {
      for (const json& c : doc.at("customers")) {
        customers.push_back(
            {c.at("s").get<int>(), c.at("t").get<int>(), rational_from_json(c.at("budget"))});
      }
    }
    return Instance(Tree(vertices, std::move(edges)), std::move(customers));
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("malformed instance: ") + ex.what());
  }
}

json to_json(const Instance& instance) {
  json edges = json::array();
  for (const Edge& e : instance.tree().edges()) edges.push_back({e.u, e.v});
  json customers = json::array();
  for (const Customer& c : instance.customers()) {
    customers.push_back({{"s", c.s}, {"t", c.t}, {"budget", to_string(c.budget)}});
  }
  return {{"vertices", instance.tree().vertex_count()},
          {"edges", std::move(edges)},
          {"customers", std::move(customers)}};
}

PricingScheme scheme_from_json(const json& doc, int edge_count) {
  try {
    std::vector<Rational> prices;
    for (const json& p : doc.at("prices")) prices.push_back(rational_from_json(p));
    if (static_cast<int>(prices.size()) != edge_count) {
      throw ValidationError("scheme has " + std::to_string(prices.size()) +
                            " prices, tree has " + std::to_string(edge_count) + " edges");
    }
    return PricingScheme(std::move(prices));
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("malformed scheme: ") + ex.what());
  }
}

json to_json(const PricingScheme& scheme) {
  json prices = json::array();
  for (const Rational& p : scheme.prices()) prices.push_back(to_string(p));
  return {{"prices", std::move(prices)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ValidationError(path.string() + ": " + ex.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

PricingScheme load_scheme(const std::filesystem::path& path, int edge_count) {
  return scheme_from_json(read_json_file(path), edge_count);
}

}  // namespace tollbooth
