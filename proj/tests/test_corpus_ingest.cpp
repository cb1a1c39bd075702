#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "mailgraph/corpus_ingest.hpp"
#include "mailgraph/error.hpp"

using namespace mailgraph;

namespace {

NodeRoster small_roster() {
  return NodeRoster({{"adams", "Ann Adams", "", ""},
                     {"baker", "Bob Baker", "", ""},
                     {"clark", "Cy Clark", "", ""},
                     {"davis", "Di Davis", "", ""}});
}

AliasTable small_table() {
  AliasTable t;
  t.add("ann.adams@", "adams");
  t.add("aadams@", "adams");
  t.add("bob.baker@", "baker");
  t.add("cy.clark@", "clark");
  t.add("di.davis@enron.com", "davis");
  return t;
}

EmailRecord message(std::string from, std::vector<std::string> to, std::vector<std::string> cc,
                    std::string id = "") {
  EmailRecord r;
  r.from_addr = std::move(from);
  r.to_addrs = std::move(to);
  r.cc_addrs = std::move(cc);
  r.message_id = std::move(id);
  return r;
}

// Straight-line tally: one pass, one addition per contribution.
Matrix brute_force(const std::vector<EmailRecord>& records, const AliasTable& table,
                   const NodeRoster& roster) {
  Matrix m(roster.size());
  auto idx = [&](const std::string& a) -> std::optional<std::size_t> {
    auto at = a.rfind('@');
    if (at == std::string::npos || a.substr(at + 1) != "enron.com") return std::nullopt;
    auto id = table.lookup(a);
    if (!id) return std::nullopt;
    return roster.find(*id);
  };
  for (const auto& r : records) {
    auto i = idx(r.from_addr);
    if (!i) continue;
    for (const auto& a : r.to_addrs)
      if (auto j = idx(a)) m(*i, *j) += 1.0;
    const double cc_weight = 1.0 / std::sqrt(1.0 + static_cast<double>(r.cc_addrs.size()));
    for (const auto& a : r.cc_addrs)
      if (auto j = idx(a)) m(*i, *j) += cc_weight;
  }
  return m;
}

std::vector<EmailRecord> synthetic_corpus(std::size_t count, std::mt19937_64& rng) {
  const std::vector<std::string> addrs = {
      "ann.adams@enron.com", "aadams@enron.com", "bob.baker@enron.com", "cy.clark@enron.com",
      "di.davis@enron.com",  "x@gmail.com",      "nobody@enron.com"};
  std::uniform_int_distribution<std::size_t> pick(0, addrs.size() - 1);
  std::uniform_int_distribution<int> count_to(0, 2), count_cc(0, 4);
  std::vector<EmailRecord> out;
  for (std::size_t k = 0; k < count; ++k) {
    EmailRecord r;
    r.from_addr = addrs[pick(rng)];
    // Distinct recipients per field keep the brute-force tally simple.
    std::vector<std::string> pool = addrs;
    std::shuffle(pool.begin(), pool.end(), rng);
    int nt = count_to(rng), nc = count_cc(rng);
    r.to_addrs.assign(pool.begin(), pool.begin() + nt);
    r.cc_addrs.assign(pool.begin() + nt, pool.begin() + nt + nc);
    r.message_id = "<" + std::to_string(k) + "@synthetic>";
    out.push_back(std::move(r));
  }
  return out;
}

std::string temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mailgraph_ingest_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

}  // namespace

TEST_SUITE_BEGIN("corpus_ingest");

TEST_CASE("parse_email extracts From, To and CC") {
  auto r = parse_email(
      "From: a@enron.com\nTo: b@enron.com\nCC: c@enron.com, d@x.org\n\nbody text\n", "m1");
  CHECK(r.from_addr == "a@enron.com");
  CHECK(r.to_addrs == std::vector<std::string>{"b@enron.com"});
  CHECK(r.cc_addrs == std::vector<std::string>{"c@enron.com", "d@x.org"});
  CHECK(r.source_path == "m1");
}

TEST_CASE("folded headers read the same as unfolded ones") {
  auto folded = parse_email(
      "From: a@enron.com\r\nTo: b@enron.com\r\nCc: c@enron.com,\r\n\td@enron.com, e@enron.com\r\n"
      "\r\n",
      "folded");
  auto flat =
      parse_email("From: a@enron.com\nTo: b@enron.com\nCc: c@enron.com, d@enron.com, e@enron.com\n",
                  "flat");
  CHECK(folded.cc_addrs == flat.cc_addrs);
  CHECK(folded.cc_addrs.size() == 3);
}

TEST_CASE("missing CC yields an empty list and the body is ignored") {
  auto r = parse_email("From: a@enron.com\nTo: b@enron.com\n\nCc: z@enron.com\nTo: y@enron.com\n",
                       "m");
  CHECK(r.cc_addrs.empty());
  CHECK(r.to_addrs.size() == 1);
}

TEST_CASE("addresses are normalized") {
  auto r = parse_email(
      "From: \"Dasovich, Jeff\" <Jeff.Dasovich@ENRON.com>\n"
      "To:  'Bob.Baker@enron.com' , Cy Clark <CY.CLARK@enron.com>\n"
      "Date: Mon, 14 May 2001 16:39:00 -0700 (PDT)\n"
      "Message-ID: <1.JavaMail.evans@thyme>\n\n",
      "m");
  CHECK(r.from_addr == "jeff.dasovich@enron.com");
  CHECK(r.to_addrs == std::vector<std::string>{"bob.baker@enron.com", "cy.clark@enron.com"});
  CHECK(r.message_id == "<1.JavaMail.evans@thyme>");
  CHECK_FALSE(r.date.empty());
}

TEST_CASE("From holds only the first address") {
  auto r = parse_email("From: a@enron.com, b@enron.com\n\n", "m");
  CHECK(r.from_addr == "a@enron.com");
}

TEST_CASE("missing From is a parse error naming the source") {
  try {
    parse_email("To: b@enron.com\n\n", "maildir/x/1.");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.source_path() == "maildir/x/1.");
  }
}

TEST_CASE("malformed header lines are skipped and logged") {
  IngestDiagnostics diag;
  auto r = parse_email("this line has no colon\nFrom: a@enron.com\nbad header: x\nTo: b@enron.com\n",
                       "m", &diag);
  CHECK(r.to_addrs.size() == 1);
  CHECK(diag.header_lines_skipped == 2);
  CHECK(diag.notes.size() == 2);
}

TEST_CASE("resolve") {
  AliasTable t;
  t.add("jeff.dasovich@", "jdasovich");
  IngestDiagnostics diag;
  CHECK(resolve("jeff.dasovich@enron.com", t, &diag) == "jdasovich");
  CHECK_FALSE(resolve("someone@gmail.com", t, &diag).has_value());
  CHECK_FALSE(resolve("jeff.dasovich@gmail.com", t, &diag).has_value());
  CHECK(diag.foreign_domain_addresses == 2);
  CHECK_FALSE(resolve("j..dasovich@enron.com", t, &diag).has_value());
  CHECK(diag.unmatched_addresses == 1);
  CHECK(diag.unmatched.at("j..dasovich@enron.com") == 1);
}

TEST_CASE("alias table rejects conflicting rules and unknown ids") {
  AliasTable t;
  t.add("a@", "x");
  t.add("A@", "x");  // same rule again is fine
  CHECK_THROWS_AS(t.add("a@", "y"), ConfigError);
  CHECK_THROWS_AS(t.add("no-at-sign", "y"), ConfigError);
  CHECK_THROWS_AS(t.validate(NodeRoster::from_ids({"y"})), ConfigError);
  CHECK_NOTHROW(t.validate(NodeRoster::from_ids({"x"})));
}

TEST_CASE("accumulate applies the CC discount") {
  const NodeRoster roster = small_roster();
  const AliasTable table = small_table();
  const std::size_t i = *roster.find("adams"), j = *roster.find("baker");

  SUBCASE("two direct messages and one CC among three names") {
    std::vector<EmailRecord> recs = {
        message("ann.adams@enron.com", {"bob.baker@enron.com"}, {}, "<1>"),
        message("aadams@enron.com", {"bob.baker@enron.com"}, {}, "<2>"),
        message("ann.adams@enron.com", {"di.davis@enron.com"},
                {"cy.clark@enron.com", "bob.baker@enron.com", "x@gmail.com"}, "<3>")};
    auto g = accumulate(recs, table, roster);
    CHECK(g.m()(i, j) == 2.5);
    CHECK(g.m()(i, *roster.find("davis")) == 1.0);
  }
  SUBCASE("single CC name contributes 1/sqrt(2)") {
    auto g = accumulate({message("ann.adams@enron.com", {}, {"bob.baker@enron.com"})}, table,
                        roster);
    CHECK(g.m()(i, j) == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(g.m()(i, j) == 1.0 / std::sqrt(2.0));
  }
  SUBCASE("empty stream gives a zero matrix") {
    CHECK(accumulate({}, table, roster).m() == Matrix(roster.size()));
  }
  SUBCASE("self-addressed mail stays in M") {
    auto g = accumulate({message("ann.adams@enron.com", {"aadams@enron.com"}, {})}, table, roster);
    CHECK(g.m()(i, i) == 1.0);
    CHECK(symmetrize(g).u()(i, i) == 0.0);
  }
  SUBCASE("unresolvable sender contributes nothing") {
    IngestDiagnostics diag;
    auto g = accumulate({message("x@gmail.com", {"bob.baker@enron.com"}, {})}, table, roster, {},
                        &diag);
    CHECK(g.m() == Matrix(roster.size()));
    CHECK(diag.senders_dropped == 1);
  }
  SUBCASE("inconsistent table is a configuration error") {
    AliasTable bad = small_table();
    bad.add("ghost@", "ghost");
    CHECK_THROWS_AS(accumulate({}, bad, roster), ConfigError);
  }
}

TEST_CASE("duplicate copies are removed unless disabled") {
  const NodeRoster roster = small_roster();
  const AliasTable table = small_table();
  auto copy = message("ann.adams@enron.com", {"bob.baker@enron.com"}, {}, "<same>");
  std::vector<EmailRecord> recs = {copy, copy};
  recs[1].source_path = "other/folder";
  IngestDiagnostics diag;
  auto deduped = accumulate(recs, table, roster, {}, &diag);
  CHECK(deduped.m()(0, 1) == 1.0);
  CHECK(diag.duplicates_removed == 1);
  auto kept = accumulate(recs, table, roster, {.dedupe = false});
  CHECK(kept.m()(0, 1) == 2.0);
}

TEST_CASE("accumulate matches a brute-force tally and ignores record order") {
  const NodeRoster roster = small_roster();
  const AliasTable table = small_table();
  std::mt19937_64 rng(77);
  auto corpus = synthetic_corpus(50, rng);
  const auto reference = accumulate(corpus, table, roster);

  auto tally = brute_force(corpus, table, roster);
  for (std::size_t a = 0; a < roster.size(); ++a)
    for (std::size_t b = 0; b < roster.size(); ++b)
      CHECK(reference.m()(a, b) == doctest::Approx(tally(a, b)).epsilon(1e-12));

  for (int trial = 0; trial < 1000; ++trial) {
    std::shuffle(corpus.begin(), corpus.end(), rng);
    REQUIRE(accumulate(corpus, table, roster).m() == reference.m());
  }
}

TEST_CASE("appending a record never decreases an entry") {
  const NodeRoster roster = small_roster();
  const AliasTable table = small_table();
  std::mt19937_64 rng(78);
  auto corpus = synthetic_corpus(60, rng);
  std::vector<EmailRecord> prefix;
  Matrix before(roster.size());
  for (const auto& r : corpus) {
    prefix.push_back(r);
    auto after = accumulate(prefix, table, roster).m();
    for (std::size_t a = 0; a < roster.size(); ++a)
      for (std::size_t b = 0; b < roster.size(); ++b) REQUIRE(after(a, b) >= before(a, b));
    before = after;
  }
}

TEST_CASE("alias templates expand against display names") {
  NodeRoster roster({{"jdasovich", "Jeff Dasovich", "", ""},
                     {"skean", "Steven J. Kean", "", ""},
                     {"jdaso2", "Jane Dasovich", "", ""}});
  IngestDiagnostics diag;
  auto t = expand_alias_templates(
      roster, {"{first}.{last}@", "{f}{last}@", "{first}.{m}.{last}@", "{last}.{first}@"},
      "enron.com", &diag);
  CHECK(t.lookup("jeff.dasovich@enron.com") == "jdasovich");
  CHECK(t.lookup("dasovich.jane@enron.com") == "jdaso2");
  CHECK(t.lookup("steven.j.kean@enron.com") == "skean");
  CHECK(t.lookup("skean@enron.com") == "skean");
  // jdasovich@ could be Jeff or Jane.
  CHECK_FALSE(t.lookup("jdasovich@enron.com").has_value());
  CHECK(diag.notes.size() == 1);
  CHECK_THROWS_AS(expand_alias_templates(roster, {"{nickname}@"}), ConfigError);
}

TEST_CASE("corpus directory and CSV readers") {
  const auto dir = temp_dir("dir");
  std::filesystem::create_directories(dir + "/a/sent");
  {
    std::ofstream(dir + "/a/sent/1.") << "From: ann.adams@enron.com\nTo: bob.baker@enron.com\n\nhi\n";
    std::ofstream(dir + "/a/sent/2.") << "Subject: no sender\n\n";
    std::ofstream(dir + "/b.txt") << "From: bob.baker@enron.com\nCc: ann.adams@enron.com\n\n";
  }
  IngestDiagnostics diag;
  auto recs = read_corpus_dir(dir, &diag);
  CHECK(recs.size() == 2);
  CHECK(diag.messages_read == 3);
  CHECK(diag.parse_failures == 1);
  auto g = accumulate(recs, small_table(), small_roster());
  CHECK(g.m()(0, 1) == 1.0);
  CHECK(g.m()(1, 0) == 1.0 / std::sqrt(2.0));

  const auto csv_path = dir + "/corpus.csv";
  std::ofstream(csv_path) << "from,to,cc\n"
                          << "ann.adams@enron.com,bob.baker@enron.com;cy.clark@enron.com,\n"
                          << ",bob.baker@enron.com,\n"
                          << "bob.baker@enron.com,,\"ann.adams@enron.com; x@y.org\"\n";
  IngestDiagnostics diag2;
  auto rows = read_corpus_csv(csv_path, &diag2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].to_addrs.size() == 2);
  CHECK(rows[1].cc_addrs == std::vector<std::string>{"ann.adams@enron.com", "x@y.org"});
  CHECK(diag2.parse_failures == 1);
  auto g2 = accumulate(rows, small_table(), small_roster());
  CHECK(g2.m()(1, 0) == 1.0 / std::sqrt(3.0));
  std::filesystem::remove_all(dir);
}

TEST_CASE("diagnostics log is line oriented") {
  IngestDiagnostics d;
  d.duplicates_removed = 3;
  d.unmatched["x@enron.com"] = 2;
  d.note("m: malformed header line");
  auto text = d.to_text();
  CHECK(text.find("duplicates_removed 3\n") != std::string::npos);
  CHECK(text.find("unmatched x@enron.com 2\n") != std::string::npos);
  CHECK(text.find("note m: malformed header line\n") != std::string::npos);
}

TEST_SUITE_END();
