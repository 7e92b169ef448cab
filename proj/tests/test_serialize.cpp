#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "uccsim/serialize.hpp"
#include "uccsim/uncertain.hpp"

using namespace uccsim;

namespace {

bool same_values(const BoolFunction& a, const BoolFunction& b) {
  if (!(a.domain() == b.domain())) return false;
  for (std::uint64_t x = 0; x < a.domain().x_size(); ++x) {
    for (std::uint64_t y = 0; y < a.domain().y_size(); ++y) {
      if (a(x, y) != b(x, y)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("function documents round-trip") {
  Rng rng(1);
  const auto inst = generate_instance(JointDistribution::noisy_hypercube(3, 0.2), 3, 2, 0.0, 0.1, rng);
  const std::vector<BoolFunction> fs = {BoolFunction::parity(4, 0b1010),
                                        BoolFunction::constant(Domain{2, 3}, true), inst.f,
                                        inst.g, BoolFunction::from_protocol(inst.g_protocol)};
  for (const BoolFunction& f : fs) {
    const Json doc = to_json(f);
    CHECK(doc.contains("n"));
    CHECK(doc.contains("kind"));
    CHECK(doc.contains("payload"));
    const BoolFunction back = function_from_json(Json::parse(doc.dump()));
    CHECK(back.kind() == f.kind());
    CHECK(same_values(back, f));
  }
}

TEST_CASE("table layout follows the index convention") {
  const BoolFunction f = BoolFunction::tabulate(Domain{1, 1}, [](std::uint64_t x, std::uint64_t y) {
    return x == 1 && y == 0;
  });
  CHECK(to_json(f)["payload"] == "0010");
}

TEST_CASE("distribution documents round-trip") {
  const JointDistribution dense = JointDistribution::dense({1, 2}, {0.1, 0.2, 0.0, 0.1, 0.2, 0.1, 0.2, 0.1});
  for (const JointDistribution& mu :
       {JointDistribution::noisy_hypercube(5, 0.15), JointDistribution::uniform_product(3), dense}) {
    const JointDistribution back = distribution_from_json(Json::parse(to_json(mu).dump()));
    CHECK(back.kind() == mu.kind());
    CHECK(back.domain() == mu.domain());
    for (std::uint64_t x = 0; x < mu.domain().x_size(); ++x) {
      for (std::uint64_t y = 0; y < mu.domain().y_size(); ++y) CHECK(back.mass(x, y) == mu.mass(x, y));
    }
  }
  CHECK_THROWS_AS(distribution_from_json(Json{{"kind", "bogus"}}), Error);
}

TEST_CASE("protocol documents round-trip") {
  Rng rng(2);
  const auto inst = generate_instance(JointDistribution::uniform_product(3), 3, 2, 0.0, 0.0, rng);
  const OneWayProtocol back = protocol_from_json(to_json(*inst.g_protocol));
  CHECK(back.message_count() == inst.g_protocol->message_count());
  CHECK(back.partition() == inst.g_protocol->partition());
  CHECK(back.decider_table() == inst.g_protocol->decider_table());
}

TEST_CASE("family pair document") {
  FamilyPair pair{BitString::from_text("0110"), BitString::from_text("0011"), 0.5};
  const Json doc = to_json(pair, 0.1);
  CHECK(doc["n"] == 4);
  CHECK(doc["payload"]["S"] == "0110");
  CHECK(doc["payload"]["T"] == "0011");
}

TEST_CASE("function and mu specs") {
  CHECK(parse_mask("0b101") == std::pair<std::uint64_t, int>{5, 3});
  CHECK(parse_mask("0011") == std::pair<std::uint64_t, int>{3, 4});
  CHECK_THROWS_AS(parse_mask("0b"), Error);
  CHECK_THROWS_AS(parse_mask("0b12"), Error);

  const BoolFunction p = parse_function_spec("parity:S=0b101");
  CHECK(p.kind() == BoolFunction::Kind::Parity);
  CHECK(p.domain() == Domain::hypercube(3));
  CHECK(p.parity_mask() == 5);
  CHECK(parse_function_spec("parity:S=0b101", 5).domain() == Domain::hypercube(5));
  CHECK_THROWS_AS(parse_function_spec("parity:S=0b101", 2), Error);
  CHECK(parse_function_spec("constant:1", 2)(3, 1));
  CHECK(parse_function_spec("equality", 2)(2, 2));
  CHECK_FALSE(parse_function_spec("equality", 2)(2, 1));
  CHECK_THROWS_AS(parse_function_spec("equality"), Error);
  CHECK_THROWS_AS(parse_function_spec("majority", 2), Error);

  CHECK(parse_mu_spec("product", 4).kind() == JointDistribution::Kind::UniformProduct);
  CHECK(parse_mu_spec("noisy:0.2", 4).noise() == 0.2);
  CHECK_THROWS_AS(parse_mu_spec("noisy:abc", 4), Error);
  CHECK_THROWS_AS(parse_mu_spec("noisy:0.2x", 4), Error);
  CHECK_THROWS_AS(parse_mu_spec("zipf", 4), Error);
}

TEST_CASE("file specs") {
  const std::string path = "serialize_mu.json";
  {
    std::ofstream out(path);
    out << to_json(JointDistribution::noisy_hypercube(2, 0.3)).dump();
  }
  CHECK(parse_mu_spec("file:" + path, 2).noise() == doctest::Approx(0.3));
  CHECK_THROWS_AS(parse_mu_spec("file:" + path, 3), Error);
  std::remove(path.c_str());
  try {
    (void)read_json_file("does_not_exist.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("strategy documents") {
  const auto ex = strategy_from_json(Json{{"kind", "nearest_codeword"}, {"codewords", "example"}}, 10, 0.2);
  CHECK(agreement_entropy_audit(10, ex, 0.2).distinct_outputs == 480);
  const auto words = strategy_from_json(
      Json{{"kind", "nearest_codeword"}, {"codewords", {"000", "111"}}}, 3, 0.34);
  CHECK(words.map(0b001) == 0);
  CHECK(words.map(0b110) == 7);
  const auto table = strategy_from_json(Json{{"kind", "table"}, {"outputs", {"01", "01", "10", "11"}}}, 2, 0.5);
  CHECK(table.map(0) == 1);
  CHECK(table.map(2) == 2);
  CHECK_THROWS_AS(strategy_from_json(Json{{"kind", "constant"}, {"value", "01"}}, 3, 0.2), Error);
  CHECK_THROWS_AS(strategy_from_json(Json{{"kind", "mystery"}}, 3, 0.2), Error);
}
