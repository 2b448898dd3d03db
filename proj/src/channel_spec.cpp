#include "chancomp/channel_spec.hpp"

#include <charconv>
#include <optional>
#include <set>

#include "chancomp/errors.hpp"
#include "chancomp/random.hpp"
#include "chancomp/zoo.hpp"

namespace chancomp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

class Params {
 public:
  Params(const ChannelSpec& spec, std::set<std::string> allowed) : spec_(spec) {
    for (const auto& [k, v] : spec.params) {
      if (!allowed.count(k)) {
        throw ParseError("unknown parameter '" + k + "' for '" + spec.name + "' in spec '" + spec.to_string() + "'");
      }
    }
  }

  std::size_t size(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) const {
    const auto v = get(key, fallback.has_value());
    if (!v) return *fallback;
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) bad(key, *v, "a non-negative integer");
    return out;
  }

  std::uint64_t u64(const std::string& key, std::uint64_t fallback) const {
    const auto v = get(key, true);
    if (!v) return fallback;
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) bad(key, *v, "a non-negative integer");
    return out;
  }

  double real(const std::string& key) const {
    const auto v = get(key, false);
    try {
      std::size_t used = 0;
      const double out = std::stod(*v, &used);
      if (used != v->size()) bad(key, *v, "a number");
      return out;
    } catch (const std::logic_error&) {
      bad(key, *v, "a number");
    }
  }

 private:
  std::optional<std::string> get(const std::string& key, bool optional) const {
    const auto it = spec_.params.find(key);
    if (it == spec_.params.end()) {
      if (optional) return std::nullopt;
      throw ParseError("missing parameter '" + key + "' for '" + spec_.name + "' in spec '" + spec_.to_string() + "'");
    }
    return it->second;
  }

  [[noreturn]] void bad(const std::string& key, const std::string& value, const char* what) const {
    throw ParseError("parameter '" + key + "=" + value + "' in spec '" + spec_.to_string() + "' is not " + what);
  }

  const ChannelSpec& spec_;
};

}  // namespace

std::string ChannelSpec::to_string() const {
  std::string out = name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep;
    out += k + "=" + v;
    sep = ',';
  }
  return out;
}

ChannelSpec parse_spec(const std::string& text) {
  ChannelSpec spec;
  const auto colon = text.find(':');
  spec.name = trim(text.substr(0, colon));
  if (spec.name.empty()) throw ParseError("spec '" + text + "' has no name");
  if (colon == std::string::npos) return spec;
  const std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    auto comma = rest.find(',', start);
    if (comma == std::string::npos) comma = rest.size();
    const std::string token = trim(rest.substr(start, comma - start));
    const auto eq = token.find('=');
    if (token.empty() || eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
      throw ParseError("malformed token '" + token + "' in spec '" + text + "' (expected key=value)");
    }
    const std::string key = trim(token.substr(0, eq));
    if (spec.params.count(key)) throw ParseError("duplicate key '" + key + "' in spec '" + text + "'");
    spec.params[key] = trim(token.substr(eq + 1));
    start = comma + 1;
  }
  return spec;
}

Channel build_channel(const ChannelSpec& spec) {
  const std::string& n = spec.name;
  if (n == "randomizing") return randomizing_channel(Params(spec, {"d"}).size("d"));
  if (n == "identity") return identity_channel(Params(spec, {"d"}).size("d"));
  if (n == "werner") {
    Params p(spec, {"d", "lambda"});
    return werner_channel(p.size("d"), p.real("lambda"));
  }
  if (n == "qc") {
    Params p(spec, {"a", "b"});
    return qc_channel(p.size("a"), p.size("b"));
  }
  if (n == "cq") {
    Params p(spec, {"a", "b"});
    return cq_channel(p.size("a"), p.size("b"));
  }
  if (n == "random") {
    Params p(spec, {"a", "b", "e", "seed"});
    return random_channel(p.size("a"), p.size("b"), p.size("e"), p.u64("seed", 0));
  }
  if (n == "forgetful") {
    // forgetful:a=8,b=8[,state=random,rank=2,seed=1]; the output state defaults to 1/b.
    Params p(spec, {"a", "b", "state", "rank", "seed"});
    ChannelSpec state{spec.params.count("state") ? spec.params.at("state") : "maxmixed", {}};
    state.params["d"] = std::to_string(p.size("b"));
    if (spec.params.count("rank")) state.params["rank"] = spec.params.at("rank");
    if (spec.params.count("seed")) state.params["seed"] = spec.params.at("seed");
    return forgetful_channel(p.size("a"), build_state(state));
  }
  throw ParseError("unknown channel '" + n + "' in spec '" + spec.to_string() +
                   "' (expected randomizing, werner, qc, cq, random, identity or forgetful)");
}

Channel build_channel(const std::string& text) { return build_channel(parse_spec(text)); }

CMatrix build_state(const ChannelSpec& spec) {
  const std::string& n = spec.name;
  if (n == "maxmixed") {
    const auto d = static_cast<Eigen::Index>(Params(spec, {"d"}).size("d"));
    if (d < 1) throw ParseError("state spec '" + spec.to_string() + "' needs d >= 1");
    return CMatrix::Identity(d, d) / static_cast<double>(d);
  }
  if (n == "pure") {
    Params p(spec, {"d", "k"});
    const auto d = p.size("d");
    const auto k = p.size("k", 0);
    if (k >= d) throw ParseError("state spec '" + spec.to_string() + "' has k >= d");
    const CVector e = CVector::Unit(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(k));
    return e * e.adjoint();
  }
  if (n == "random") {
    Params p(spec, {"d", "rank", "seed"});
    const auto d = p.size("d");
    const auto rank = p.size("rank", d);
    if (d < 1 || rank < 1 || rank > d) throw ParseError("state spec '" + spec.to_string() + "' needs 1 <= rank <= d");
    CounterRng rng(p.u64("seed", 0), 0);
    return random_density(rng, d, rank);
  }
  throw ParseError("unknown state '" + n + "' in spec '" + spec.to_string() + "' (expected maxmixed, pure or random)");
}

CMatrix build_state(const std::string& text) { return build_state(parse_spec(text)); }

}  // namespace chancomp
