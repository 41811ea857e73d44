#include "vqi/question.hpp"

#include <random>

#include "doctest.h"
#include "vqi/error.hpp"
#include "vqi/text.hpp"

using namespace vqi;

TEST_CASE("count questions extract the subject before the first verb") {
  const ParsedQuestion pq = classify(normalize("How many sailboats are there?"));
  CHECK(pq.kind == QuestionKind::Count);
  CHECK(pq.subject.tokens == std::vector<std::string>{"sailboats"});

  const ParsedQuestion people = classify(normalize("How many people?"));
  CHECK(people.kind == QuestionKind::Count);
  CHECK(people.subject.tokens == std::vector<std::string>{"people"});

  // trailing prepositional phrase dropped at "in"
  const ParsedQuestion birds =
      classify(normalize("How many birds in the picture?"));
  CHECK(birds.kind == QuestionKind::Count);
  CHECK(birds.subject.tokens == std::vector<std::string>{"birds"});

  const ParsedQuestion cars = classify(normalize("How many red cars can you see?"));
  CHECK(cars.subject.tokens == std::vector<std::string>{"red", "cars"});
}

TEST_CASE("how many with no subject is Other") {
  CHECK(classify(normalize("How many are there?")).kind == QuestionKind::Other);
  CHECK(classify(normalize("How many?")).kind == QuestionKind::Other);
}

TEST_CASE("yes/no questions by auxiliary prefix") {
  for (const char* q : {"Is this a dog?", "Are they playing?", "Was it red?",
                        "Do you see a cat?", "Can he swim?", "Should I go?",
                        "Does the dog bark?", "Have they eaten?"})
    CHECK(classify(normalize(q)).kind == QuestionKind::YesNo);
}

TEST_CASE("attribute questions extract slot and subject") {
  const ParsedQuestion pq = classify(normalize("What color is the umbrella?"));
  CHECK(pq.kind == QuestionKind::Attribute);
  CHECK(pq.attribute_slot == "color");
  CHECK(pq.subject.tokens == std::vector<std::string>{"the", "umbrella"});

  const ParsedQuestion sport =
      classify(normalize("What sport is the man playing?"));
  CHECK(sport.kind == QuestionKind::Attribute);
  CHECK(sport.attribute_slot == "sport");
  CHECK(sport.subject.tokens ==
        std::vector<std::string>{"the", "man", "playing"});

  // unknown slot falls through to Other
  CHECK(classify(normalize("What time is it?")).kind == QuestionKind::Other);
  // no subject after the copula
  CHECK(classify(normalize("What color is?")).kind == QuestionKind::Other);
}

TEST_CASE("everything else is Other") {
  CHECK(classify(normalize("Where is the cat?")).kind == QuestionKind::Other);
  CHECK(classify(normalize("Why?")).kind == QuestionKind::Other);
  CHECK_THROWS_AS(classify(TokenSeq{}), Error);
}

TEST_CASE("classification is total over random token sequences") {
  std::mt19937 rng(19);
  const std::vector<std::string> words = {
      "how",  "many", "what", "color", "is",   "are", "the", "a",
      "dogs", "red",  "in",   "there", "will", "see", "cat"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> len(1, 8);
  for (int i = 0; i < 1000; ++i) {
    TokenSeq q;
    for (int k = 0, n = len(rng); k < n; ++k)
      q.tokens.push_back(words[pick(rng)]);
    const ParsedQuestion pq = classify(q);
    const bool needs_subject = pq.kind == QuestionKind::Count ||
                               pq.kind == QuestionKind::Attribute;
    if (needs_subject) CHECK(!pq.subject.empty());
    // same input, same answer
    CHECK(classify(q).kind == pq.kind);
  }
}
