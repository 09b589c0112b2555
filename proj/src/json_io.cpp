#include "ssvcg/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace ssvcg {

SurrogateSpec surrogate_from_json(json const &doc)
{
  json const &body = doc.contains("surrogate") ? doc.at("surrogate") : doc;
  std::string const kind = body.value("kind", std::string("power_law"));
  if (kind != "power_law")
  {
    throw std::invalid_argument("unsupported surrogate kind '" + kind + "'; only power_law can be configured");
  }
  if (!body.contains("alpha"))
  {
    throw std::invalid_argument("power_law surrogate needs 'alpha'");
  }
  return SurrogateSpec::power_law(body.at("alpha").get<double>());
}

json to_json(SurrogateSpec const &spec)
{
  if (spec.is_power_law())
  {
    return {{"kind", "power_law"}, {"alpha", spec.alpha()}};
  }
  return {{"kind", "custom"}, {"u_at_one", spec.u_at_one()}};
}

json to_json(BidProfile const &theta)
{
  return theta.vector();
}

json to_json(MechanismOutcome const &outcome)
{
  return {
    {"theta", outcome.theta.vector()},
    {"allocation", outcome.allocation.shares},
    {"payments", outcome.payments},
    {"rebates", outcome.rebates},
    {"p_S", outcome.surplus_ps},
    {"sigma_S", outcome.welfare_sigma},
  };
}

json to_json(TheoryConstants const &k)
{
  return {{"K1", k.K1}, {"K2", k.K2}, {"K3_inv", k.K3_inv}, {"B2", k.B2}, {"Bn", k.Bn}, {"gamma", k.gamma}};
}

json to_json(LpStats const &stats)
{
  return {
    {"rows", stats.rows},
    {"vars", stats.vars},
    {"iterations", stats.iterations},
    {"route", lp::to_string(stats.route)},
    {"status", lp::to_string(stats.status)},
  };
}

std::vector<ValuationSpec> valuations_from_json(json const &doc)
{
  json const &list = doc.is_object() && doc.contains("valuations") ? doc.at("valuations") : doc;
  if (!list.is_array() || list.empty())
  {
    throw std::invalid_argument("valuations must be a nonempty array");
  }
  std::vector<ValuationSpec> out;
  for (json const &entry : list)
  {
    std::string const kind = entry.value("kind", std::string("power"));
    if (kind != "power")
    {
      throw std::invalid_argument("unsupported valuation kind '" + kind + "'");
    }
    out.push_back(ValuationSpec::power(entry.at("w").get<double>(), entry.at("beta").get<double>()));
  }
  return out;
}

RebateCoefficients coefficients_from_json(json const &doc)
{
  if (!doc.contains("n") || !doc.contains("c"))
  {
    throw std::invalid_argument("coefficient file needs 'n' and 'c'");
  }
  RebateCoefficients c(doc.at("n").get<std::size_t>(), doc.at("c").get<std::vector<double>>());
  if (!c.satisfies_participation())
  {
    throw std::invalid_argument("coefficient partial sums must be nonnegative");
  }
  return c;
}

json read_json_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::invalid_argument("cannot open '" + path + "'");
  }
  try
  {
    return json::parse(in);
  }
  catch (json::parse_error const &e)
  {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace ssvcg
