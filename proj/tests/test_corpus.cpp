#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "verinews/corpus.hpp"
#include "verinews/errors.hpp"

using namespace verinews;

TEST(ParseCsv, CountsEveryDataRow) {
  std::string csv = "public_id,title,text,our rating\n";
  for (int i = 0; i < 1264; ++i) csv += "id" + std::to_string(i) + ",t,b,false\n";
  EXPECT_EQ(parse_csv(csv).size(), 1264u);
}

TEST(ParseCsv, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(parse_csv("public_id,title,text,our rating\n").empty());
  EXPECT_TRUE(parse_csv("public_id,title,text").empty());
}

TEST(ParseCsv, QuotedCommaInTitle) {
  const auto recs = parse_csv("public_id,title,text,our rating\nx1,\"a, b\",c,false\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].title, "a, b");
  EXPECT_EQ(recs[0].text, "c");
  EXPECT_EQ(recs[0].rating, "false");
}

TEST(ParseCsv, DoubledQuotesAndEmbeddedNewline) {
  const auto recs = parse_csv("public_id,title,text\r\nq,\"say \"\"hi\"\"\",\"line1\r\nline2\"\r\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].title, "say \"hi\"");
  EXPECT_EQ(recs[0].text, "line1\r\nline2");
  EXPECT_FALSE(recs[0].rating.has_value());
}

TEST(ParseCsv, HeaderVariants) {
  const auto a = parse_csv("\xEF\xBB\xBFPublic_ID , Title,TEXT,our_rating,extra\nk,,x,TRUE,zzz\n");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].public_id, "k");
  EXPECT_EQ(a[0].title, "");
  EXPECT_EQ(a[0].rating, "TRUE");
}

TEST(ParseCsv, ShortRowsArePadded) {
  const auto recs = parse_csv("public_id,title,text,our rating\nz,only title\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].text, "");
  EXPECT_EQ(recs[0].rating, "");
}

TEST(ParseCsv, UnterminatedQuoteReportsLine) {
  try {
    parse_csv("public_id,title,text\na,b,c\nd,\"open,c\n");
    FAIL() << "expected CsvParseError";
  } catch (const CsvParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseCsv, MissingColumnNamesIt) {
  try {
    parse_csv("public_id,text\na,b\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.column(), "title");
  }
}

TEST(ParseCsv, EmptyPublicIdRejected) {
  EXPECT_THROW(parse_csv("public_id,title,text\n,b,c\n"), CsvParseError);
}

TEST(ParseCsv, RoundTripProperty) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "ab ,\"\n\r\txyz'";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 12), rows(0, 20);
  auto field = [&] {
    std::string s(len(rng), ' ');
    for (auto& c : s) c = alphabet[pick(rng)];
    return s;
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<RawRecord> recs(rows(rng));
    const bool labeled = trial % 2 == 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      recs[i].public_id = "id" + std::to_string(i) + field();
      recs[i].title = field();
      recs[i].text = field();
      if (labeled) recs[i].rating = field();
    }
    std::ostringstream out;
    write_csv(out, recs);
    const auto back = parse_csv(out.str());
    if (recs.empty() || !labeled) {
      ASSERT_EQ(back.size(), recs.size());
      for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_EQ(back[i].public_id, recs[i].public_id);
        EXPECT_EQ(back[i].title, recs[i].title);
        EXPECT_EQ(back[i].text, recs[i].text);
      }
    } else {
      ASSERT_EQ(back, recs);
    }
  }
}

TEST(ParseLabel, Examples) {
  EXPECT_EQ(parse_label("FALSE"), Label::kFalse);
  EXPECT_EQ(parse_label("partially false"), Label::kPartiallyFalse);
  EXPECT_EQ(parse_label("  True "), Label::kTrue);
  EXPECT_EQ(parse_label("Partially \t  FALSE"), Label::kPartiallyFalse);
  EXPECT_EQ(parse_label("other"), Label::kOther);
}

TEST(ParseLabel, DisplayNameRoundTrip) {
  for (const Label l : kAllLabels) EXPECT_EQ(parse_label(display_name(l)), l);
  EXPECT_EQ(display_name(Label::kPartiallyFalse), "partially_false");
}

TEST(ParseLabel, RejectsUnknown) {
  try {
    parse_label("mostly true");
    FAIL() << "expected LabelError";
  } catch (const LabelError& e) {
    EXPECT_EQ(e.value(), "mostly true");
  }
  EXPECT_THROW(parse_label(""), LabelError);
  EXPECT_THROW(parse_label("falsely"), LabelError);
}

TEST(ParseLabel, CodesAreClosed) {
  EXPECT_FALSE(label_from_code(4).has_value());
  EXPECT_FALSE(label_from_code(-1).has_value());
  EXPECT_EQ(label_from_code(3), Label::kOther);
}

TEST(ToDocuments, BlanksAndLabels) {
  std::vector<RawRecord> recs = {{"a", "T", "", "other"}, {"b", "", "x", "false"}};
  const auto docs = to_documents(recs, true);
  EXPECT_EQ(docs[0].body, "");
  EXPECT_EQ(docs[0].label, Label::kOther);
  EXPECT_EQ(docs[1].title, "");
  EXPECT_EQ(docs[1].label, Label::kFalse);
}

TEST(ToDocuments, UnlabeledIgnoresRatings) {
  std::vector<RawRecord> recs(612);
  for (std::size_t i = 0; i < recs.size(); ++i) recs[i].public_id = "p" + std::to_string(i);
  const auto docs = to_documents(recs, false);
  EXPECT_EQ(docs.size(), 612u);
  EXPECT_TRUE(std::none_of(docs.begin(), docs.end(), [](const Document& d) { return d.label.has_value(); }));
  EXPECT_FALSE(is_labeled(docs));
}

TEST(ToDocuments, MissingRatingNamesRecord) {
  std::vector<RawRecord> recs = {{"good", "", "", "true"}, {"bad-one", "", "", ""}};
  try {
    to_documents(recs, true);
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("bad-one"), std::string::npos);
  }
  recs[1].rating.reset();
  EXPECT_THROW(to_documents(recs, true), SchemaError);
}

TEST(DatasetStats, ToySet) {
  std::vector<Document> docs;
  for (const Label l : {Label::kFalse, Label::kFalse, Label::kTrue, Label::kPartiallyFalse})
    docs.push_back({"", "", "", l});
  const auto s = dataset_stats(docs);
  EXPECT_EQ(s[Label::kFalse], 2u);
  EXPECT_EQ(s[Label::kTrue], 1u);
  EXPECT_EQ(s[Label::kPartiallyFalse], 1u);
  EXPECT_EQ(s[Label::kOther], 0u);
  EXPECT_EQ(s.total, 4u);
  EXPECT_EQ(dataset_stats({}).total, 0u);
}

TEST(DatasetStats, RejectsUnlabeled) {
  std::vector<Document> docs = {{"a", "", "", std::nullopt}};
  EXPECT_THROW(dataset_stats(docs), CorpusError);
}

TEST(DatasetStats, PermutationInvariantAndTotal) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Document> docs(static_cast<std::size_t>(trial));
    for (auto& d : docs) d.label = testkit::random_label(rng);
    const auto a = dataset_stats(docs);
    std::shuffle(docs.begin(), docs.end(), rng);
    const auto b = dataset_stats(docs);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.total, docs.size());
    std::size_t sum = 0;
    for (auto c : a.counts) sum += c;
    EXPECT_EQ(sum, a.total);
  }
}

TEST(Corpora, MixedIsRejected) {
  std::vector<Document> mixed = {{"a", "", "", Label::kTrue}, {"b", "", "", std::nullopt}};
  EXPECT_THROW(is_labeled(mixed), CorpusError);
  std::vector<std::vector<Document>> parts = {{{"a", "", "", Label::kTrue}}, {{"b", "", "", std::nullopt}}};
  EXPECT_THROW(concat_corpora(parts), CorpusError);
  parts[1][0].label = Label::kOther;
  EXPECT_EQ(concat_corpora(parts).size(), 2u);
}
