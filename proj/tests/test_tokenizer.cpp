/* Copyright 2026 The acrotag Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <doctest.h>

#include "acrotag/error.hpp"
#include "acrotag/tokenizer.hpp"
#include "support/synthetic.hpp"
#include "support/util.hpp"

using namespace acrotag;
using testing::U;

namespace {

tok::SubwordVocab ToyVocab() {
  return tok::SubwordVocab::FromPieces(
      {"[PAD]", "[UNK]", "[MASK]", "(", ")", "CP", "##I", "index", "the", "C"});
}

tok::Tokenizer ToyTokenizer() {
  return tok::Tokenizer(ToyVocab(), tok::CharVocab({U'C', U'P', U'I', U'(', U')'}));
}

}  // namespace

TEST_SUITE("tokenizer") {
  TEST_CASE("vocabulary file") {
    testing::TempDir dir("vocab");
    std::string lines = "[PAD]\n[UNK]\n[MASK]\n";
    for (int i = 0; i < 7; ++i) lines += "p" + std::to_string(i) + "\n";
    corpus::WriteFile(dir / "v.txt", lines);
    auto v = tok::SubwordVocab::Load(dir / "v.txt");
    REQUIRE(v.size() == 10);
    for (int32_t i = 0; i < 10; ++i) CHECK(v.Find(v.piece(i)) == i);
    CHECK(v.mask_id() == 2);

    corpus::WriteFile(dir / "dup.txt", lines + "p3\n");
    CHECK_THROWS_AS(tok::SubwordVocab::Load(dir / "dup.txt"), Error);

    corpus::WriteFile(dir / "nomask.txt", "[PAD]\n[UNK]\nx\n");
    try {
      tok::SubwordVocab::Load(dir / "nomask.txt");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("[MASK]") != std::string::npos);
    }

    v.Save(dir / "again.txt");
    CHECK(corpus::ReadFile(dir / "again.txt") == lines);
  }

  TEST_CASE("greedy longest match with offsets") {
    auto ts = ToyTokenizer().Tokenize(U"(CPI)");
    CHECK(ts.tokens == std::vector<std::string>{"(", "CP", "##I", ")"});
    CHECK(ts.offsets == std::vector<Span>{{0, 1}, {1, 3}, {3, 4}, {4, 5}});
    CHECK(ts.ids.size() == 4);
    CHECK(ts.char_rows.size() == 4);
  }

  TEST_CASE("empty text and unknown words") {
    auto t = ToyTokenizer();
    CHECK(t.Tokenize(U"").size() == 0);
    CHECK(t.Tokenize(U"   ").size() == 0);
    auto ts = t.Tokenize(U"the zebra");
    REQUIRE(ts.size() == 2);
    CHECK(ts.ids[1] == t.vocab().unk_id());
    CHECK(ts.offsets[1] == Span{4, 9});
    // A partial segmentation still falls back to one UNK piece.
    auto partial = t.Tokenize(U"CPX");
    REQUIRE(partial.size() == 1);
    CHECK(partial.ids[0] == t.vocab().unk_id());
    CHECK(partial.offsets[0] == Span{0, 3});
  }

  TEST_CASE("char rows") {
    tok::CharVocab cv({U'S', U'L', U'N', U'I'});
    CHECK(cv.Id(U'I') == 2);
    CHECK(cv.Id(U'L') == 3);
    CHECK(cv.Id(U'?') == tok::CharVocab::kUnkId);
    auto row = tok::EncodeChars("LNS", cv, 16);
    std::vector<int32_t> expected(16, 0);
    expected[0] = cv.Id(U'L');
    expected[1] = cv.Id(U'N');
    expected[2] = cv.Id(U'S');
    CHECK(row == expected);

    CHECK(tok::EncodeChars("LLLLLNNNNNSSSSSIIIII", cv, 16).size() == 16);
    auto stripped = tok::EncodeChars("##I", cv, 16);
    CHECK(stripped[0] == cv.Id(U'I'));
    CHECK(stripped[1] == 0);
  }

  TEST_CASE("char vocab file keeps id order") {
    testing::TempDir dir("chars");
    auto cv = tok::CharVocab::FromIds({U'z', U'a', U'é'});
    cv.Save(dir / "c.tsv");
    auto back = tok::CharVocab::Load(dir / "c.tsv");
    CHECK(back.chars() == cv.chars());
    CHECK(back.Id(U'z') == 2);
  }

  TEST_CASE("corpus-built tokenizer covers the corpus") {
    testing::TemplateCorpus gen(3);
    auto ds = gen.Generate(60);
    auto texts = tok::Texts(ds);
    auto t = tok::BuildTokenizer(texts);
    const auto& v = t.vocab();
    CHECK(v.pad_id() != v.unk_id());
    CHECK(v.unk_id() != v.mask_id());
    for (const auto& text : texts) {
      auto ts = t.Tokenize(text);
      CHECK(ts.size() == ts.ids.size());
      CHECK(ts.size() == ts.offsets.size());
      CHECK(ts.size() == ts.char_rows.size());
      // Slicing by offsets (plus the gaps) rebuilds the text.
      std::u32string rebuilt;
      int64_t pos = 0;
      for (size_t i = 0; i < ts.size(); ++i) {
        const Span& o = ts.offsets[i];
        REQUIRE(o.start >= pos);
        rebuilt += text.substr(pos, o.end - pos);
        pos = o.end;
        CHECK(ts.ids[i] != v.unk_id());
        std::string piece = ts.tokens[i];
        if (piece.starts_with("##")) piece = piece.substr(2);
        CHECK(piece == testing::S(text.substr(o.start, o.length())));
        CHECK(ts.char_rows[i].size() == 16);
        for (int32_t c : ts.char_rows[i]) CHECK(c < static_cast<int32_t>(t.chars().size()));
      }
      rebuilt += text.substr(pos);
      CHECK(rebuilt == text);
      CHECK(t.Tokenize(text).ids == ts.ids);
    }
  }

  TEST_CASE("unseen characters keep their spelling in char rows") {
    auto t = tok::BuildTokenizer({U"alpha beta"});
    auto ts = t.Tokenize(U"alpha ßeta");
    REQUIRE(ts.size() >= 2);
    const size_t last = ts.size() - 1;
    CHECK(ts.ids[last] == t.vocab().unk_id());
    CHECK(ts.offsets[last] == Span{6, 10});
    CHECK(ts.char_rows[last][0] == tok::CharVocab::kUnkId);
    CHECK(ts.char_rows[last][1] == t.chars().Id(U'e'));
  }

  TEST_CASE("pre-split isolates punctuation") {
    auto words = tok::PreSplit(U"LNS, (x)");
    CHECK(words == std::vector<Span>{{0, 3}, {3, 4}, {5, 6}, {6, 7}, {7, 8}});
  }
}
