// Copyright 2026 The graphsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>
#include <string>

#include "graphsynth/dsl/parser.hpp"
#include "graphsynth/dsl/validate.hpp"
#include "graphsynth/rng/random_stream.hpp"
#include "gtest/gtest.h"

namespace graphsynth::dsl {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

GeneratorRegistry test_registry() {
  GeneratorRegistry r;
  r.property_generators = {"dictionary", "conditional", "uniformInt", "uuid",
                           "date", "after"};
  r.structure_generators = {"rmat", "planted", "degree"};
  return r;
}

bool mentions(const std::vector<Diagnostic>& diags, const std::string& text) {
  for (const auto& d : diags) {
    if (d.message.find(text) != std::string::npos) return true;
  }
  return false;
}

TEST(ParserTest, RunningExample) {
  const auto schema =
      parse_schema(read_file(GRAPHSYNTH_DATA_DIR "/social/schema.gs"));
  ASSERT_EQ(schema.node_types.size(), 2u);
  ASSERT_EQ(schema.edge_types.size(), 2u);
  const auto* person = schema.find_node_type("Person");
  ASSERT_NE(person, nullptr);
  EXPECT_EQ(person->properties.size(), 5u);
  const auto* name = person->find_property("name");
  ASSERT_NE(name, nullptr);
  ASSERT_EQ(name->depends_on.size(), 2u);
  EXPECT_EQ(name->depends_on[0].property, "country");
  EXPECT_EQ(name->depends_on[1].property, "sex");
  const auto* knows = schema.find_edge_type("knows");
  ASSERT_NE(knows, nullptr);
  EXPECT_EQ(knows->cardinality, Cardinality::kManyToMany);
  ASSERT_TRUE(knows->correlation);
  EXPECT_EQ(knows->correlation->tail_property, "country");
  EXPECT_EQ(knows->correlation->distribution_path, "country_joint.csv");
  const auto* creates = schema.find_edge_type("creates");
  ASSERT_NE(creates, nullptr);
  EXPECT_EQ(creates->cardinality, Cardinality::kOneToMany);
  ASSERT_EQ(creates->properties.size(), 1u);
  EXPECT_EQ(creates->properties[0].depends_on[0].scope, RefScope::kTail);
  ASSERT_EQ(schema.scales.size(), 1u);
  EXPECT_EQ(schema.scales[0].target, "Person");
  EXPECT_TRUE(validate_schema(schema, test_registry()).empty());
}

TEST(ParserTest, EmptyInputParsesAndValidationReportsMissingScale) {
  const auto schema = parse_schema("");
  EXPECT_TRUE(schema.node_types.empty());
  EXPECT_TRUE(schema.edge_types.empty());
  const auto diags = validate_schema(schema, test_registry());
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_TRUE(mentions(diags, "missing scale"));
}

TEST(ParserTest, BarePathArgumentWithoutScale) {
  const auto schema =
      parse_schema("node Person { name: string = dictionary(names.csv) }");
  ASSERT_EQ(schema.node_types.size(), 1u);
  const auto& gen = schema.node_types[0].properties[0].generator;
  EXPECT_EQ(gen.generator_name, "dictionary");
  ASSERT_EQ(gen.parameters.size(), 1u);
  EXPECT_EQ(gen.parameters[0].key, "");
  EXPECT_EQ(gen.parameters[0].text, "names.csv");
  EXPECT_EQ(gen.parameters[0].kind, ArgKind::kWord);
  EXPECT_TRUE(mentions(validate_schema(schema, test_registry()), "missing scale"));
}

TEST(ParserTest, LiteralKinds) {
  const auto schema = parse_schema(
      "node A { x: integer = uniformInt(lo=-5, hi=1e3, tag=abc, "
      "path=../d/x-y.csv, s=\"q\\\"uote\", d=2010-01-01) }");
  const auto& args = schema.node_types[0].properties[0].generator.parameters;
  ASSERT_EQ(args.size(), 6u);
  EXPECT_EQ(args[0].kind, ArgKind::kNumber);
  EXPECT_EQ(args[0].text, "-5");
  EXPECT_EQ(args[1].kind, ArgKind::kNumber);
  EXPECT_EQ(args[2].kind, ArgKind::kWord);
  EXPECT_EQ(args[3].text, "../d/x-y.csv");
  EXPECT_EQ(args[4].kind, ArgKind::kString);
  EXPECT_EQ(args[4].text, "q\"uote");
  EXPECT_EQ(args[5].kind, ArgKind::kWord);
  EXPECT_EQ(args[5].text, "2010-01-01");
}

TEST(ParserTest, ArrowsWithoutSpaces) {
  const auto schema = parse_schema(
      "node P {} node M {}\n"
      "edge a: P--P { structure = rmat() }\n"
      "edge b: P->M { structure = degree(constant=1) }\n"
      "edge c: P<->M { structure = degree(constant=1) }\n");
  ASSERT_EQ(schema.edge_types.size(), 3u);
  EXPECT_EQ(schema.edge_types[0].cardinality, Cardinality::kManyToMany);
  EXPECT_EQ(schema.edge_types[1].cardinality, Cardinality::kOneToMany);
  EXPECT_EQ(schema.edge_types[2].cardinality, Cardinality::kOneToOne);
}

TEST(ParserTest, SyntaxErrorCarriesLineAndColumn) {
  try {
    parse_schema("node Person {\n  name string = uuid()\n}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 2u);
    EXPECT_EQ(e.span().column, 8u);
    EXPECT_NE(std::string(e.what()).find("2:8:"), std::string::npos);
    EXPECT_NE(e.detail().find("expected ':'"), std::string::npos);
  }
}

TEST(ParserTest, UnknownKeyword) {
  try {
    parse_schema("node A {}\nvertex B {}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 2u);
    EXPECT_EQ(e.span().column, 1u);
    EXPECT_NE(e.detail().find("unknown keyword 'vertex'"), std::string::npos);
  }
}

TEST(ParserTest, DuplicateDeclarations) {
  EXPECT_THROW(parse_schema("node A {} node A {}"), ParseError);
  EXPECT_THROW(parse_schema("node A {} edge A: A -- A { structure = rmat() }"),
               ParseError);
  EXPECT_THROW(parse_schema("node A { x: string = uuid() x: string = uuid() }"),
               ParseError);
}

TEST(ParserTest, OtherSyntaxErrors) {
  EXPECT_THROW(parse_schema("node A { x: float = uuid() }"), ParseError);
  EXPECT_THROW(parse_schema("node A { x: string = uuid( }"), ParseError);
  EXPECT_THROW(parse_schema("node A { x: string = f(a=\"open) }"), ParseError);
  EXPECT_THROW(parse_schema("scale A = -3"), ParseError);
  EXPECT_THROW(parse_schema("scale A = 2.5"), ParseError);
  EXPECT_THROW(parse_schema("edge e: A => B { structure = rmat() }"), ParseError);
  EXPECT_THROW(parse_schema("edge e: A -- B { }"), ParseError);
  EXPECT_THROW(parse_schema("node A { x: string = uuid() correlated(tail.) }"),
               ParseError);
  EXPECT_THROW(parse_schema("node A { $ }"), ParseError);
}

TEST(ParserTest, CommentsIgnored) {
  const auto schema = parse_schema("# header\nnode A { # trailing\n}\n# end");
  EXPECT_EQ(schema.node_types.size(), 1u);
}

TEST(ParserTest, SpansPointInsideInput) {
  const std::string text = read_file(GRAPHSYNTH_DATA_DIR "/social/schema.gs");
  const auto schema = parse_schema(text);
  auto check = [&](const Span& s) {
    EXPECT_LE(s.offset + s.length, text.size());
    EXPECT_GT(s.length, 0u);
  };
  for (const auto& n : schema.node_types) {
    check(n.span);
    EXPECT_EQ(text.substr(n.span.offset, 4), "node");
    for (const auto& p : n.properties) {
      check(p.span);
      EXPECT_EQ(text.substr(p.span.offset, p.name.size()), p.name);
    }
  }
  for (const auto& e : schema.edge_types) {
    check(e.span);
    EXPECT_EQ(text.substr(e.span.offset + e.span.length - 1, 1), "}");
  }
}

TEST(ValidateTest, DeclaredDependenciesAreAccepted) {
  const auto schema = parse_schema(
      "node Person {\n"
      "  country: string = dictionary(file=\"c.csv\")\n"
      "  sex: string = conditional(file=\"s.csv\") correlated(country)\n"
      "  name: string = conditional(file=\"n.csv\") correlated(country, sex)\n"
      "}\nscale Person = 10\n");
  EXPECT_TRUE(validate_schema(schema, test_registry()).empty());
}

TEST(ValidateTest, TwoCycle) {
  const auto schema = parse_schema(
      "node T {\n"
      "  A: string = conditional(f.csv) correlated(B)\n"
      "  B: string = conditional(f.csv) correlated(A)\n"
      "}\nscale T = 1\n");
  const auto diags = validate_schema(schema, test_registry());
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_TRUE(mentions(diags, "dependency cycle: T.A -> T.B -> T.A"));
}

TEST(ValidateTest, UnresolvedEndpointType) {
  const auto schema = parse_schema(
      "node Person {}\nedge haunts: Ghost -- Person { structure = rmat() }\n"
      "scale Person = 1\n");
  const auto diags = validate_schema(schema, test_registry());
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_TRUE(mentions(diags, "unresolved type 'Ghost'"));
  EXPECT_EQ(diags[0].span.line, 2u);
}

TEST(ValidateTest, ReportsEachProblemInOrder) {
  const auto schema = parse_schema(
      "node A { x: string = mystery() y: string = uuid() correlated(z) "
      "w: string = uuid() correlated(tail.x) }\n"
      "edge e: A -- A { structure = nope() join = q ~ \"\" "
      "p: date = after() correlated(head.nothing) }\n"
      "scale B = 3\nscale A = 2\n");
  const auto diags = validate_schema(schema, test_registry());
  std::vector<std::string> messages;
  for (const auto& d : diags) messages.push_back(d.message);
  ASSERT_EQ(messages.size(), 9u) << ::testing::PrintToString(messages);
  EXPECT_NE(messages[0].find("duplicate scale"), std::string::npos);
  EXPECT_NE(messages[1].find("scale target 'B'"), std::string::npos);
  EXPECT_NE(messages[2].find("unknown property generator 'mystery'"),
            std::string::npos);
  EXPECT_NE(messages[3].find("undeclared property 'A.z'"), std::string::npos);
  EXPECT_NE(messages[4].find("endpoint references"), std::string::npos);
  EXPECT_NE(messages[5].find("unknown structure generator 'nope'"),
            std::string::npos);
  EXPECT_NE(messages[6].find("correlated property 'q'"), std::string::npos);
  EXPECT_NE(messages[7].find("needs a distribution file"), std::string::npos);
  EXPECT_NE(messages[8].find("undeclared property 'A.nothing'"),
            std::string::npos);
  // Pure: a second run yields the identical list.
  EXPECT_EQ(validate_schema(schema, test_registry()), diags);
}

TEST(ValidateTest, BipartiteCorrelationNeedsPropertyOnEachSide) {
  const auto schema = parse_schema(
      "node P { c: string = uuid() }\nnode M { t: string = uuid() }\n"
      "edge e: P -> M { structure = degree(constant=1) join = c, t ~ \"j.csv\" }\n"
      "edge f: P -> M { structure = degree(constant=1) join = c ~ \"j.csv\" }\n"
      "scale P = 1\n");
  const auto diags = validate_schema(schema, test_registry());
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_TRUE(mentions(diags, "'c' is not declared on 'M'"));
}

// Builds random schemas from the grammar's building blocks, prints them and
// checks that the printed text parses back to the same structure.
TEST(PrinterTest, ParsePrintParseRoundTrips) {
  const std::vector<std::string> gens = {"dictionary", "uuid", "rmat", "f"};
  const std::vector<std::string> values = {"1", "-2.5e3", "\"a b\"", "\"q\\\"\"",
                                           "x.csv", "dir/y-z.csv", "word",
                                           "2010-01-01"};
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    rng::StreamCursor r(rng::derive_stream(trial, "dsl-roundtrip"));
    auto gen_call = [&] {
      std::string s = gens[r.bounded(gens.size())] + "(";
      const auto n = r.bounded(4);
      for (std::uint64_t i = 0; i < n; ++i) {
        if (i > 0) s += ", ";
        if (r.bounded(2)) s += "k" + std::to_string(i) + "=";
        s += values[r.bounded(values.size())];
      }
      return s + ")";
    };
    std::string text;
    const auto nodes = 1 + r.bounded(3);
    for (std::uint64_t n = 0; n < nodes; ++n) {
      text += "node N" + std::to_string(n) + " {\n";
      const auto props = r.bounded(4);
      for (std::uint64_t p = 0; p < props; ++p) {
        text += " p" + std::to_string(p) + ": " +
                (r.bounded(2) ? "string" : "date") + " = " + gen_call();
        if (p > 0 && r.bounded(2)) text += " correlated(p0)";
        text += "\n";
      }
      text += "}\n";
    }
    const auto edges = r.bounded(3);
    for (std::uint64_t e = 0; e < edges; ++e) {
      const char* arrows[] = {" -- ", " -> ", " <-> "};
      text += "edge E" + std::to_string(e) + ": N0" + arrows[r.bounded(3)] +
              "N" + std::to_string(r.bounded(nodes)) +
              " { structure = " + gen_call();
      if (r.bounded(2)) text += " join = a, b ~ \"j.csv\"";
      if (r.bounded(2)) text += " w: integer = uuid() correlated(tail.p0, head.p1)";
      text += " }\n";
    }
    text += "scale N0 = " + std::to_string(r.bounded(1000)) + "\n";
    const auto first = parse_schema(text);
    const auto printed = print_schema(first);
    const auto second = parse_schema(printed);
    ASSERT_EQ(strip_spans(first), strip_spans(second))
        << "input:\n" << text << "\nprinted:\n" << printed;
    EXPECT_EQ(print_schema(second), printed);
  }
}

}  // namespace
}  // namespace graphsynth::dsl
