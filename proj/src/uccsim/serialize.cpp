#include "uccsim/serialize.hpp"

#include <cmath>
#include <fstream>

#include "uccsim/error.hpp"

namespace uccsim {

namespace {

std::string bits_text(const std::vector<std::uint8_t>& v, std::size_t begin,
                      std::size_t count) {
  std::string s(count, '0');
  for (std::size_t i = 0; i < count; ++i) {
    if (v[begin + i] != 0) s[i] = '1';
  }
  return s;
}

std::vector<std::uint8_t> parse_bits(const std::string& s, std::size_t expected,
                                     const char* what) {
  require(s.size() == expected, ErrorCode::InvalidArgument, what);
  std::vector<std::uint8_t> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    require(s[i] == '0' || s[i] == '1', ErrorCode::InvalidArgument, what);
    out[i] = s[i] == '1';
  }
  return out;
}

std::uint32_t parse_word(const Json& j, int size_y) {
  if (j.is_number_unsigned()) return j.get<std::uint32_t>();
  const std::string s = j.get<std::string>();
  require(s.size() == static_cast<std::size_t>(size_y), ErrorCode::InvalidArgument,
          "strategy word length differs from |Y|");
  return static_cast<std::uint32_t>(BitString::from_text(s).value());
}

Domain domain_of(const Json& doc) {
  if (doc.contains("x_bits")) {
    return Domain{doc.at("x_bits").get<int>(), doc.at("y_bits").get<int>()};
  }
  return Domain::hypercube(doc.at("n").get<int>());
}

void put_domain(Json& doc, const Domain& d) {
  doc["n"] = d.x_bits;
  if (d.x_bits != d.y_bits) {
    doc["x_bits"] = d.x_bits;
    doc["y_bits"] = d.y_bits;
  }
}

}  // namespace

Json to_json(const OneWayProtocol& protocol) {
  const Domain& d = protocol.domain();
  Json doc;
  put_domain(doc, d);
  doc["kind"] = "one_way_protocol";
  Json deciders = Json::array();
  for (std::uint32_t i = 0; i < protocol.message_count(); ++i) {
    deciders.push_back(bits_text(protocol.decider_table(), i * d.y_size(), d.y_size()));
  }
  doc["payload"] = {{"L", protocol.message_count()},
                    {"partition", protocol.partition()},
                    {"deciders", std::move(deciders)}};
  return doc;
}

OneWayProtocol protocol_from_json(const Json& doc) {
  require(doc.at("kind") == "one_way_protocol", ErrorCode::InvalidArgument,
          "document is not a one-way protocol");
  const Domain d = domain_of(doc);
  const Json& payload = doc.at("payload");
  const auto count = payload.at("L").get<std::uint32_t>();
  auto partition = payload.at("partition").get<std::vector<std::uint32_t>>();
  std::vector<std::uint8_t> deciders;
  const Json& rows = payload.at("deciders");
  require(rows.size() == count, ErrorCode::InvalidArgument, "need L decider tables");
  for (const Json& row : rows) {
    auto bits = parse_bits(row.get<std::string>(), d.y_size(), "bad decider table");
    deciders.insert(deciders.end(), bits.begin(), bits.end());
  }
  return OneWayProtocol(d, count, std::move(partition), std::move(deciders));
}

Json to_json(const BoolFunction& f) {
  Json doc;
  put_domain(doc, f.domain());
  switch (f.kind()) {
    case BoolFunction::Kind::Table:
      doc["kind"] = "table";
      doc["payload"] = bits_text(f.table_values(), 0, f.table_values().size());
      break;
    case BoolFunction::Kind::Parity:
      doc["kind"] = "parity";
      doc["payload"] = {{"mask", f.parity_mask()}};
      break;
    case BoolFunction::Kind::Constant:
      doc["kind"] = "constant";
      doc["payload"] = {{"value", f.constant_value() ? 1 : 0}};
      break;
    case BoolFunction::Kind::Protocol:
      doc["kind"] = "protocol";
      doc["payload"] = to_json(*f.protocol());
      break;
  }
  return doc;
}

BoolFunction function_from_json(const Json& doc) {
  const Domain d = domain_of(doc);
  const std::string kind = doc.at("kind").get<std::string>();
  const Json& payload = doc.at("payload");
  if (kind == "table") {
    BoolFunction::check_table_size(d);
    return BoolFunction::table(
        d, parse_bits(payload.get<std::string>(), d.size(), "bad function table"));
  }
  if (kind == "parity") {
    require(d.x_bits == d.y_bits, ErrorCode::DomainMismatch, "parity needs |x| = |y|");
    return BoolFunction::parity(d.x_bits, payload.at("mask").get<std::uint64_t>());
  }
  if (kind == "constant") {
    return BoolFunction::constant(d, payload.at("value").get<int>() != 0);
  }
  if (kind == "protocol") {
    return BoolFunction::from_protocol(
        std::make_shared<const OneWayProtocol>(protocol_from_json(payload)));
  }
  fail(ErrorCode::InvalidArgument, "unknown function kind '" + kind + "'");
}

Json to_json(const JointDistribution& mu) {
  Json doc;
  switch (mu.kind()) {
    case JointDistribution::Kind::NoisyHypercube:
      doc["kind"] = "noisy_hypercube";
      doc["n"] = mu.domain().x_bits;
      doc["p"] = mu.noise();
      return doc;
    case JointDistribution::Kind::UniformProduct:
      doc["kind"] = "uniform_product";
      doc["n"] = mu.domain().x_bits;
      return doc;
    case JointDistribution::Kind::Dense:
      break;
  }
  put_domain(doc, mu.domain());
  doc["kind"] = "dense";
  doc["payload"] = mu.dense_masses();
  return doc;
}

JointDistribution distribution_from_json(const Json& doc) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "noisy_hypercube") {
    return JointDistribution::noisy_hypercube(doc.at("n").get<int>(),
                                              doc.at("p").get<double>());
  }
  if (kind == "uniform_product") {
    return JointDistribution::uniform_product(doc.at("n").get<int>());
  }
  if (kind == "dense") {
    return JointDistribution::dense(domain_of(doc),
                                    doc.at("payload").get<std::vector<double>>());
  }
  fail(ErrorCode::InvalidArgument, "unknown distribution kind '" + kind + "'");
}

Json to_json(const FamilyPair& pair, double p) {
  Json doc;
  doc["n"] = pair.s.size();
  doc["kind"] = "family_pair";
  doc["payload"] = {{"S", pair.s.to_text()},
                    {"T", pair.t.to_text()},
                    {"p", p},
                    {"q", pair.q}};
  return doc;
}

AgreementStrategy strategy_from_json(const Json& doc, int size_y, double delta2) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "identity") return AgreementStrategy::identity();
  if (kind == "constant") return AgreementStrategy::constant(parse_word(doc.at("value"), size_y));
  if (kind == "nearest_codeword") {
    std::vector<std::uint32_t> code;
    const Json& words = doc.at("codewords");
    if (words.is_string() && words.get<std::string>() == "example") {
      require(size_y == 10, ErrorCode::InvalidArgument, "the example code has |Y| = 10");
      code = example_code_10_4();
    } else {
      for (const Json& w : words) code.push_back(parse_word(w, size_y));
    }
    const int radius = static_cast<int>(std::floor(delta2 * size_y + 1e-9));
    return AgreementStrategy::nearest_codeword(std::move(code), radius);
  }
  if (kind == "table") {
    std::vector<std::uint32_t> outputs;
    for (const Json& w : doc.at("outputs")) outputs.push_back(parse_word(w, size_y));
    return AgreementStrategy::table(std::move(outputs));
  }
  fail(ErrorCode::InvalidArgument, "unknown strategy kind '" + kind + "'");
}

std::pair<std::uint64_t, int> parse_mask(const std::string& text) {
  std::string digits = text;
  if (digits.rfind("0b", 0) == 0) digits = digits.substr(2);
  require(!digits.empty() && digits.size() <= 64, ErrorCode::InvalidArgument,
          "mask must have 1 to 64 binary digits");
  std::uint64_t mask = 0;
  for (char c : digits) {
    require(c == '0' || c == '1', ErrorCode::InvalidArgument, "mask must be binary");
    mask = (mask << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return {mask, static_cast<int>(digits.size())};
}

BoolFunction parse_function_spec(const std::string& spec, int n) {
  if (spec.rfind("file:", 0) == 0) return function_from_json(read_json_file(spec.substr(5)));
  if (spec.rfind("parity:S=", 0) == 0) {
    const auto [mask, digits] = parse_mask(spec.substr(9));
    const int bits = n >= 0 ? n : digits;
    require(bits == 64 || (mask >> bits) == 0, ErrorCode::InvalidArgument,
            "parity mask is longer than n");
    return BoolFunction::parity(bits, mask);
  }
  require(n >= 0, ErrorCode::InvalidArgument, "this function needs an explicit n");
  if (spec == "constant:0" || spec == "constant:1") {
    return BoolFunction::constant(Domain::hypercube(n), spec.back() == '1');
  }
  if (spec == "equality") {
    return BoolFunction::tabulate(Domain::hypercube(n),
                                  [](std::uint64_t x, std::uint64_t y) { return x == y; });
  }
  fail(ErrorCode::InvalidArgument, "unknown function spec '" + spec + "'");
}

JointDistribution parse_mu_spec(const std::string& spec, int n) {
  if (spec == "product") return JointDistribution::uniform_product(n);
  if (spec.rfind("noisy:", 0) == 0) {
    std::size_t used = 0;
    const std::string value = spec.substr(6);
    double p = 0.0;
    try {
      p = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == value.size() && used > 0, ErrorCode::InvalidArgument,
            "noisy:p needs a number");
    return JointDistribution::noisy_hypercube(n, p);
  }
  if (spec.rfind("file:", 0) == 0) {
    JointDistribution mu = distribution_from_json(read_json_file(spec.substr(5)));
    require(mu.domain() == Domain::hypercube(n), ErrorCode::DomainMismatch,
            "distribution file does not match n");
    return mu;
  }
  fail(ErrorCode::InvalidArgument, "unknown distribution spec '" + spec + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
}

}  // namespace uccsim
