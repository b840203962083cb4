#include "ehmi/payoff.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

namespace ehmi {

namespace {

constexpr const char* kOutcomeKey[4] = {"11", "12", "21", "22"};

int arity_a(Outcome o) { return PayoffParams::a_has_bound_term(o) ? 3 : 2; }
int arity_b(Outcome o) { return PayoffParams::b_has_bound_term(o) ? 3 : 2; }

double eval(const std::array<double, 3>& c, bool has_bound, const char* who, Outcome o,
            double accel, const std::optional<double>& bound) {
  if (has_bound && !bound)
    throw MissingAccelBound(std::string("outcome o") + kOutcomeKey[index(o)] +
                            " needs the collision-avoidance bound for player " + who);
  if (!has_bound && bound)
    throw SpuriousAccelBound(std::string("outcome o") + kOutcomeKey[index(o)] +
                             " carries no collision-avoidance term for player " + who);
  double u = c[0] + c[1] * accel;
  if (has_bound) u += c[2] * *bound;
  return u;
}

// Shortest decimal form that parses back to the identical double.
std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::array<double, kParamCount> pack(const PayoffParams& p) {
  std::array<double, kParamCount> out{};
  std::size_t k = 0;
  for (Outcome o : kOutcomes)
    for (int i = 0; i < arity_a(o); ++i) out[k++] = p.alpha[index(o)][i];
  for (Outcome o : kOutcomes)
    for (int i = 0; i < arity_b(o); ++i) out[k++] = p.beta[index(o)][i];
  return out;
}

PayoffParams unpack(std::span<const double, kParamCount> v) {
  PayoffParams p;
  std::size_t k = 0;
  for (Outcome o : kOutcomes)
    for (int i = 0; i < arity_a(o); ++i) p.alpha[index(o)][i] = v[k++];
  for (Outcome o : kOutcomes)
    for (int i = 0; i < arity_b(o); ++i) p.beta[index(o)][i] = v[k++];
  return p;
}

double payoff_a(const PayoffParams& p, Outcome o, double accel_a,
                std::optional<double> accel_bound_a) {
  return eval(p.alpha[index(o)], PayoffParams::a_has_bound_term(o), "A", o, accel_a,
              accel_bound_a);
}

double payoff_b(const PayoffParams& p, Outcome o, double accel_b,
                std::optional<double> accel_bound_b) {
  return eval(p.beta[index(o)], PayoffParams::b_has_bound_term(o), "B", o, accel_b,
              accel_bound_b);
}

std::optional<UtilityMatrix> utility_matrix(const Encounter& e, const PayoffParams& p,
                                            const BoundOptions& opt) {
  const auto bound_a = collision_avoid_accel(e.turn, e.straight, opt);
  const auto bound_b = collision_avoid_accel(e.straight, e.turn, opt);
  if (!bound_a || !bound_b) return std::nullopt;
  UtilityMatrix u;
  for (Outcome o : kOutcomes) {
    const auto ba = PayoffParams::a_has_bound_term(o) ? bound_a : std::optional<double>{};
    const auto bb = PayoffParams::b_has_bound_term(o) ? bound_b : std::optional<double>{};
    u.a[index(o)] = payoff_a(p, o, e.turn.a, ba);
    u.b[index(o)] = payoff_b(p, o, e.straight.a, bb);
  }
  return u;
}

std::optional<double> total_payoff(const Encounter& e, const PayoffParams& p, Outcome o,
                                   const BoundOptions& opt) {
  const auto u = utility_matrix(e, p, opt);
  if (!u) return std::nullopt;
  return u->total(o);
}

std::string params_to_text(const PayoffParams& p) {
  std::ostringstream os;
  for (Outcome o : kOutcomes)
    for (int i = 0; i < arity_a(o); ++i)
      os << "alpha." << kOutcomeKey[index(o)] << "." << i << " = "
         << format_double(p.alpha[index(o)][i]) << "\n";
  for (Outcome o : kOutcomes)
    for (int i = 0; i < arity_b(o); ++i)
      os << "beta." << kOutcomeKey[index(o)] << "." << i << " = "
         << format_double(p.beta[index(o)][i]) << "\n";
  return os.str();
}

PayoffParams parse_params_text(const std::string& text) {
  std::map<std::string, double> kv;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("parameter line " + std::to_string(line_no) +
                                    " is not `key = value`");
      continue;
    }
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    const auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(val);
    double x = 0.0;
    const auto res = std::from_chars(val.data(), val.data() + val.size(), x);
    if (res.ec != std::errc{} || res.ptr != val.data() + val.size())
      throw std::invalid_argument("bad numeric value for " + key + " (line " +
                                  std::to_string(line_no) + ")");
    if (!kv.emplace(key, x).second)
      throw std::invalid_argument("duplicate parameter key " + key);
  }

  PayoffParams p;
  const auto take = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("missing parameter key " + key);
    const double x = it->second;
    kv.erase(it);
    return x;
  };
  for (Outcome o : kOutcomes)
    for (int i = 0; i < arity_a(o); ++i)
      p.alpha[index(o)][i] =
          take("alpha." + std::string(kOutcomeKey[index(o)]) + "." + std::to_string(i));
  for (Outcome o : kOutcomes)
    for (int i = 0; i < arity_b(o); ++i)
      p.beta[index(o)][i] =
          take("beta." + std::string(kOutcomeKey[index(o)]) + "." + std::to_string(i));
  if (!kv.empty()) throw std::invalid_argument("unknown parameter key " + kv.begin()->first);
  return p;
}

PayoffParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_params_text(ss.str());
}

void save_params(const PayoffParams& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write parameter file " + path);
  out << params_to_text(p);
}

}  // namespace ehmi
