#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "eventqa/ntriples.hpp"
#include "eventqa/vocabulary.hpp"

namespace eventqa {
namespace {

TEST(NTriples, MinimalStatement) {
  const auto t = parse_ntriples_line("<a> <p> <b> .", 1);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (Triple{Term::make_iri("a"), Term::make_iri("p"), Term::make_iri("b")}));
}

TEST(NTriples, TypedLiteral) {
  const auto t =
      parse_ntriples_line("<e> <http://dbpedia.org/property/year> \"2001\"^^<http://www.w3.org/2001/XMLSchema#integer> .", 1);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->object, Term::make_literal({"2001", vocab::xsd_integer, ""}));
}

TEST(NTriples, MissingObject) {
  try {
    (void)parse_ntriples_line("<a> <p> .", 1);
    FAIL() << "expected MalformedLine";
  } catch (const MalformedLine& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.reason(), "missing object");
  }
}

TEST(NTriples, EscapesAndLanguage) {
  const auto t = parse_ntriples_line(R"(_:b1 <p> "Peñarol \"club\""@es .)", 1);
  ASSERT_TRUE(t);
  EXPECT_TRUE(t->subject.is_blank());
  EXPECT_EQ(t->object.value, "Peñarol \"club\"");
  EXPECT_EQ(t->object.language, "es");
}

TEST(NTriples, CommentsAndBlankLines) {
  EXPECT_FALSE(parse_ntriples_line("# comment", 1));
  EXPECT_FALSE(parse_ntriples_line("   ", 2));
}

TEST(NTriples, LenientSkipsAndReports) {
  std::istringstream in("<a> <p> <b> .\n<a> <p> .\n<c> <p> <d> .\n");
  NTriplesReader reader(in, ParseMode::lenient);
  int n = 0;
  while (reader.next()) ++n;
  EXPECT_EQ(n, 2);
  ASSERT_EQ(reader.diagnostics().size(), 1u);
  EXPECT_EQ(reader.diagnostics()[0].line(), 2u);
}

TEST(NTriples, StrictThrowsWithLine) {
  EXPECT_THROW(parse_ntriples("<a> <p> <b> .\n<a> <p> .\n"), MalformedLine);
}

TEST(NTriples, ReadsGzip) {
  const auto path = std::filesystem::temp_directory_path() / "eventqa_test.nt.gz";
  const std::string text = "<a> <p> <b> .\n<b> <p> \"x\" .\n";
  gzFile f = gzopen(path.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
  gzclose(f);
  std::vector<Triple> seen;
  const auto n = for_each_triple(path, ParseMode::strict, [&](Triple&& t) { seen.push_back(std::move(t)); });
  EXPECT_EQ(n, 2u);
  EXPECT_EQ(seen, parse_ntriples(text));
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace eventqa
