#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mg/model.hpp"
#include "mg/rng.hpp"

using namespace mg;

TEST_CASE("config invariants") {
  CHECK(GameConfig{1, 0}.n_agents() == 3);
  CHECK(GameConfig{5, 0}.n_agents() == 11);
  CHECK_THROWS_AS(GameConfig{0, 0}.validate(), std::invalid_argument);
  CHECK(other(Choice::A) == Choice::B);
  CHECK(other(Choice::B) == Choice::A);
}

TEST_CASE("validate_transcript checks the daily sum") {
  GameConfig one{1, 0};
  PublicTranscript t;
  t.append(DayRecord{1, 2});
  t.append(DayRecord{2, 1});
  CHECK(validate_transcript(t, one));

  PublicTranscript bad;
  bad.append(DayRecord{2, 2});
  CHECK_FALSE(validate_transcript(bad, one));

  PublicTranscript five;
  five.append(DayRecord{5, 6});
  CHECK(validate_transcript(five, GameConfig{5, 0}));
}

TEST_CASE("csv round trip and shape") {
  PublicTranscript t;
  t.append(DayRecord{2, 1});
  t.append(DayRecord{1, 2});
  const std::string csv = transcript_to_csv(t);
  CHECK(csv == "day,attendance_a,attendance_b\n1,2,1\n2,1,2\n");
  CHECK(transcript_from_csv(csv) == t);

  CHECK_THROWS_AS(transcript_from_csv("day,attendance_a,attendance_b\n2,1,2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(transcript_from_csv("1,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(transcript_from_csv("1,x,2\n"), std::invalid_argument);
}

TEST_CASE("json mirror carries the same fields") {
  PublicTranscript t;
  t.append(DayRecord{5, 6});
  const std::string json_text = transcript_to_json(t);
  CHECK(json_text.find("\"attendance_a\":5") != std::string::npos);
  CHECK(json_text.find("\"attendance_b\":6") != std::string::npos);
  CHECK(transcript_from_json(json_text) == t);
}

TEST_CASE("serialization round trip on random transcripts") {
  Xoshiro256 rng(991);
  for (int iter = 0; iter < 200; ++iter) {
    const std::uint32_t n_big = 1 + rng.next() % 40;
    const std::uint32_t n_agents = 2 * n_big + 1;
    PublicTranscript t;
    const int days = 1 + static_cast<int>(rng.next() % 25);
    for (int d = 0; d < days; ++d) {
      const std::uint32_t a = rng.next() % (n_agents + 1);
      t.append(DayRecord{a, n_agents - a});
    }
    CHECK(transcript_from_csv(transcript_to_csv(t)) == t);
    CHECK(transcript_from_json(transcript_to_json(t)) == t);
  }
}

TEST_CASE("agent view basics") {
  AgentView view;
  CHECK_THROWS_AS(view.last_choice(), std::logic_error);
  view.own_choices.push_back(Choice::B);
  CHECK(view.last_choice() == Choice::B);
}

TEST_CASE("scripted stream replays and exhausts") {
  ScriptedStream s({0.25, 0.75});
  CHECK(s.next_uniform() == 0.25);
  CHECK(s.next_uniform() == 0.75);
  CHECK_THROWS_AS(s.next_uniform(), std::logic_error);
}

TEST_CASE("seeded streams are stable and independent") {
  SeededStream a(stream_seed(7, 0, 0));
  SeededStream a2(stream_seed(7, 0, 0));
  SeededStream b(stream_seed(7, 0, 1));
  bool all_same = true;
  bool any_diff_stream = false;
  for (int i = 0; i < 100; ++i) {
    const double u = a.next_uniform();
    all_same = all_same && u == a2.next_uniform();
    any_diff_stream = any_diff_stream || u != b.next_uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(all_same);
  CHECK(any_diff_stream);
}
