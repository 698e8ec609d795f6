#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <thread>

#include "helpers.hpp"
#include "newsignals/sources/entity.hpp"
#include "newsignals/sources/news_source.hpp"
#include "newsignals/sources/pageviews.hpp"
#include "newsignals/sources/sparql.hpp"

using namespace newsignals;
using namespace sources;
using core::Tick;
using testhelpers::FakeHttpClient;
using testhelpers::TempDir;

namespace {

const std::filesystem::path kFixtures = NS_FIXTURES_DIR;

Tick T(const char* iso) { return Tick::parse(iso); }

HttpSession::Options fast_options() {
    HttpSession::Options options;
    options.host_spacing = std::chrono::milliseconds(1);
    return options;
}

struct SleepLog {
    std::vector<std::chrono::milliseconds> delays;
    SleepFn fn() {
        return [this](std::chrono::milliseconds d) { delays.push_back(d); };
    }
};

}  // namespace

TEST_CASE("qid validation") {
    CHECK(is_valid_qid("Q1"));
    CHECK(is_valid_qid("Q2283"));
    CHECK_FALSE(is_valid_qid("Q"));
    CHECK_FALSE(is_valid_qid("q42"));
    CHECK_FALSE(is_valid_qid("42"));
    CHECK_FALSE(is_valid_qid("Q42b"));
    CHECK_FALSE(is_valid_qid(""));

    CHECK(make_entity("Q312").label == "Q312");
    CHECK(make_entity("Q312", "Apple").label == "Apple");
    CHECK_THROWS_AS(make_entity("apple"), std::invalid_argument);
}

TEST_CASE("with_retry returns immediately on success") {
    int calls = 0;
    SleepLog sleeps;
    const auto response = with_retry(
        RetryPolicy{}, [&] { ++calls; return HttpResponse{200, "ok", {}}; }, sleeps.fn());
    CHECK(response.status == 200);
    CHECK(calls == 1);
    CHECK(sleeps.delays.empty());
}

TEST_CASE("with_retry recovers from transport failures") {
    int calls = 0;
    SleepLog sleeps;
    const auto response = with_retry(
        RetryPolicy{},
        [&]() -> HttpResponse {
            if (++calls < 3) throw TransportError("connection reset");
            return HttpResponse{200, "ok", {}};
        },
        sleeps.fn());
    CHECK(response.status == 200);
    CHECK(calls == 3);  // exactly min(attempts to success, max_attempts)
    REQUIRE(sleeps.delays.size() == 2);
    // Exponential backoff 200, 400 with <=10% jitter.
    CHECK(sleeps.delays[0].count() >= 180);
    CHECK(sleeps.delays[0].count() <= 220);
    CHECK(sleeps.delays[1].count() >= 360);
    CHECK(sleeps.delays[1].count() <= 440);
}

TEST_CASE("with_retry never retries client errors") {
    for (int status : {400, 403, 404}) {
        int calls = 0;
        SleepLog sleeps;
        const auto response = with_retry(
            RetryPolicy{}, [&] { ++calls; return HttpResponse{status, "no", {}}; }, sleeps.fn());
        CHECK(response.status == status);
        CHECK(calls == 1);
        CHECK(sleeps.delays.empty());
    }
}

TEST_CASE("with_retry retries 429 and 5xx then reports the attempt count") {
    int calls = 0;
    SleepLog sleeps;
    RetryPolicy policy;
    policy.max_attempts = 4;
    CHECK_THROWS_WITH_AS(
        with_retry(policy, [&] { ++calls; return HttpResponse{503, "", {}}; }, sleeps.fn()),
        doctest::Contains("after 4 attempts"), TransportError);
    CHECK(calls == 4);
    CHECK(sleeps.delays.size() == 3);
}

TEST_CASE("retry-after header overrides the backoff delay") {
    int calls = 0;
    SleepLog sleeps;
    const auto response = with_retry(
        RetryPolicy{},
        [&]() -> HttpResponse {
            if (++calls == 1) return HttpResponse{429, "", {{"retry-after", "2"}}};
            return HttpResponse{200, "ok", {}};
        },
        sleeps.fn());
    CHECK(response.status == 200);
    REQUIRE(sleeps.delays.size() == 1);
    CHECK(sleeps.delays[0] == std::chrono::milliseconds(2000));
}

TEST_CASE("backoff is capped by max_delay") {
    RetryPolicy policy;
    policy.max_attempts = 6;
    policy.max_delay = std::chrono::milliseconds(500);
    policy.jitter_fraction = 0.0;
    int calls = 0;
    SleepLog sleeps;
    CHECK_THROWS_AS(
        with_retry(policy, [&]() -> HttpResponse { ++calls; throw TransportError("down"); },
                   sleeps.fn()),
        TransportError);
    CHECK(calls == 6);
    REQUIRE(sleeps.delays.size() == 5);
    CHECK(sleeps.delays[0] == std::chrono::milliseconds(200));
    CHECK(sleeps.delays[1] == std::chrono::milliseconds(400));
    CHECK(sleeps.delays[2] == std::chrono::milliseconds(500));
    CHECK(sleeps.delays[4] == std::chrono::milliseconds(500));
}

TEST_CASE("retry policy validation") {
    RetryPolicy policy;
    policy.max_attempts = 0;
    CHECK_THROWS_AS(policy.validate(), std::invalid_argument);
    policy = {};
    policy.jitter_fraction = 1.5;
    CHECK_THROWS_AS(policy.validate(), std::invalid_argument);
}

TEST_CASE("url parsing") {
    const auto p = parse_url("https://wikimedia.org/api/rest_v1/metrics?x=1");
    CHECK(p.scheme == "https");
    CHECK(p.host == "wikimedia.org");
    CHECK(p.port == 0);
    CHECK(p.target == "/api/rest_v1/metrics?x=1");
    CHECK(p.origin() == "https://wikimedia.org");

    const auto q = parse_url("http://127.0.0.1:8080");
    CHECK(q.host == "127.0.0.1");
    CHECK(q.port == 8080);
    CHECK(q.target == "/");
    CHECK_THROWS_AS(parse_url("not a url"), std::invalid_argument);
}

TEST_CASE("host pacer spaces same-host requests") {
    HostPacer pacer(std::chrono::milliseconds(40), 4);
    const auto t0 = std::chrono::steady_clock::now();
    { auto slot = pacer.acquire("a.example"); }
    { auto slot = pacer.acquire("a.example"); }
    const auto same_host = std::chrono::steady_clock::now() - t0;
    CHECK(same_host >= std::chrono::milliseconds(40));

    const auto t1 = std::chrono::steady_clock::now();
    { auto slot = pacer.acquire("b.example"); }
    const auto other_host = std::chrono::steady_clock::now() - t1;
    CHECK(other_host < std::chrono::milliseconds(30));
}

TEST_CASE("http cache stores and replays responses") {
    TempDir dir("httpcache");
    HttpCache cache(dir.path());
    CHECK_FALSE(cache.lookup("nope").has_value());

    HttpResponse response{200, "payload", {{"etag", "\"abc\""}}};
    const auto key = HttpCache::make_key("https://x", "q", "2023-01-01/2023-01-03");
    cache.store(key, response);
    const auto hit = cache.lookup(key);
    REQUIRE(hit.has_value());
    CHECK(hit->status == 200);
    CHECK(hit->body == "payload");
    CHECK(hit->header("ETag") == "\"abc\"");

    // Corrupt entries behave like misses.
    for (const auto& entry : std::filesystem::directory_iterator(cache.dir())) {
        testhelpers::write_file(entry.path(), "{broken");
    }
    CHECK_FALSE(cache.lookup(key).has_value());
}

TEST_CASE("session serves cached responses without a request") {
    TempDir dir("session");
    auto fake = std::make_shared<FakeHttpClient>();
    fake->set_default(FakeHttpClient::respond(200, "{\"items\": []}"));
    auto options = fast_options();
    options.cache_dir = dir.path();
    HttpSession session(options, fake);

    CHECK(session.get("https://h.example/a", {}, "key-1").body == "{\"items\": []}");
    CHECK(session.get("https://h.example/a", {}, "key-1").body == "{\"items\": []}");
    CHECK(fake->request_count() == 1);
    CHECK(session.get("https://h.example/a", {}, "key-2").status == 200);
    CHECK(fake->request_count() == 2);
    // Empty key disables caching.
    session.get("https://h.example/a", {}, "");
    session.get("https://h.example/a", {}, "");
    CHECK(fake->request_count() == 4);
}

TEST_CASE("pageviews fixture parses bit-exactly") {
    const auto body = testhelpers::read_file(kFixtures / "pageviews_ok.json");
    std::vector<Tick> gaps;
    const auto series = parse_pageviews(body, "wikimedia_pageviews", T("2023-01-01"),
                                        T("2023-01-04"), &gaps);
    CHECK(series.name() == "wikimedia_pageviews");
    REQUIRE(series.size() == 3);
    CHECK(series[0] == 24250.0);
    CHECK(series[1] == 26391.0);
    CHECK(series[2] == 25107.0);
    CHECK(gaps.empty());
}

TEST_CASE("pageviews gaps zero-fill and land in the gap log") {
    const auto body = testhelpers::read_file(kFixtures / "pageviews_gap.json");
    std::vector<Tick> gaps;
    const auto series = parse_pageviews(body, "wikimedia_pageviews", T("2023-01-01"),
                                        T("2023-01-04"), &gaps);
    REQUIRE(series.size() == 3);
    CHECK(series[0] == 24250.0);
    CHECK(series[1] == 0.0);
    CHECK(series[2] == 25107.0);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0] == T("2023-01-02"));
}

TEST_CASE("pageviews decode errors") {
    CHECK_THROWS_AS(parse_pageviews("not json", "s", T("2023-01-01"), T("2023-01-02")),
                    DecodeError);
    CHECK_THROWS_AS(parse_pageviews("{\"items\": [{\"views\": 1}]}", "s", T("2023-01-01"),
                                    T("2023-01-02")),
                    DecodeError);
    CHECK_THROWS_AS(parse_pageviews("{}", "s", T("2023-01-01"), T("2023-01-02")), DecodeError);
    CHECK_THROWS_AS(parse_pageviews("{\"items\": []}", "s", T("2023-01-02"), T("2023-01-02")),
                    std::invalid_argument);
}

TEST_CASE("pageviews request url uses the inclusive remote convention") {
    auto fake = std::make_shared<FakeHttpClient>();
    HttpSession session(fast_options(), fake);
    PageviewsClient client(session, "https://wikimedia.org/api/rest_v1");
    CHECK(client.request_url("en.wikipedia", "Apple_Inc.", T("2023-01-01"), T("2023-01-04")) ==
          "https://wikimedia.org/api/rest_v1/metrics/pageviews/per-article/en.wikipedia/"
          "all-access/all-agents/Apple_Inc./daily/2023010100/2023010300");
}

TEST_CASE("pageviews client fetches, converts 404, and caches") {
    TempDir dir("pvcache");
    auto fake = std::make_shared<FakeHttpClient>();
    fake->push(FakeHttpClient::respond(200, testhelpers::read_file(kFixtures / "pageviews_ok.json")));
    fake->push(FakeHttpClient::respond(404, "{}"));
    auto options = fast_options();
    options.cache_dir = dir.path();
    HttpSession session(options, fake);
    PageviewsClient client(session);

    const auto series = client.fetch("en.wikipedia", "Apple_Inc.", T("2023-01-01"), T("2023-01-04"));
    CHECK(series.size() == 3);
    CHECK(series[1] == 26391.0);
    REQUIRE(fake->request_count() == 1);
    CHECK(fake->urls[0].find("Apple_Inc./daily/2023010100/2023010300") != std::string::npos);
    CHECK(fake->last_headers == HeaderList{{"Accept", "application/json"}});

    CHECK_THROWS_WITH_AS(
        client.fetch("en.wikipedia", "No_Such_Page", T("2023-01-01"), T("2023-01-04")),
        doctest::Contains("No_Such_Page"), NotFoundError);

    // Same fetch again: served from the response cache, no third request.
    const auto again = client.fetch("en.wikipedia", "Apple_Inc.", T("2023-01-01"), T("2023-01-04"));
    CHECK(again == series);
    CHECK(fake->request_count() == 2);
}

TEST_CASE("sparql fixture parses into entity records") {
    const auto body = testhelpers::read_file(kFixtures / "sparql_entities.json");
    const auto records = parse_sparql_entities(body);
    REQUIRE(records.size() == 2);
    CHECK(records[0].qid == "Q312");
    CHECK(records[0].label == "Apple Inc.");
    CHECK(records[0].wikipedia_title == "Apple_Inc.");
    CHECK(records[1].qid == "Q2283");
    CHECK(records[1].label == "Microsoft");
    CHECK(records[1].wikipedia_title == "Microsoft");
}

TEST_CASE("sparql parsing is tolerant of optional bindings and dedups") {
    const char* body = R"({"results": {"bindings": [
        {"item": {"value": "http://www.wikidata.org/entity/Q1"}},
        {"item": {"value": "Q1"}, "itemLabel": {"value": "again"}},
        {"item": {"value": "Q9"}, "article": {"value": "Some Page"}}
    ]}})";
    const auto records = parse_sparql_entities(body);
    REQUIRE(records.size() == 2);
    CHECK(records[0].qid == "Q1");
    CHECK(records[0].label == "Q1");  // label defaults to the qid
    CHECK_FALSE(records[0].wikipedia_title.has_value());
    CHECK(records[1].wikipedia_title == "Some_Page");  // spaces -> underscores

    CHECK_THROWS_AS(parse_sparql_entities("[]"), DecodeError);
    CHECK_THROWS_AS(parse_sparql_entities("{\"results\": {}}"), DecodeError);
    CHECK_THROWS_AS(
        parse_sparql_entities(R"({"results": {"bindings": [{"other": {"value": "Q1"}}]}})"),
        DecodeError);
    CHECK_THROWS_AS(
        parse_sparql_entities(R"({"results": {"bindings": [{"item": {"value": "banana"}}]}})"),
        DecodeError);
}

TEST_CASE("sparql client sends the query with the JSON accept header") {
    auto fake = std::make_shared<FakeHttpClient>();
    fake->push(FakeHttpClient::respond(
        200, testhelpers::read_file(kFixtures / "sparql_entities.json")));
    HttpSession session(fast_options(), fake);
    SparqlClient client(session, "https://query.wikidata.org/sparql");

    const auto records = client.run("SELECT ?item WHERE { }");
    CHECK(records.size() == 2);
    REQUIRE(fake->request_count() == 1);
    CHECK(fake->urls[0].rfind("https://query.wikidata.org/sparql?query=", 0) == 0);
    CHECK(fake->urls[0].find("format=json") != std::string::npos);
    CHECK(fake->urls[0].find(' ') == std::string::npos);  // query is escaped
    CHECK(fake->last_headers ==
          HeaderList{{"Accept", "application/sparql-results+json"}});

    fake->push(FakeHttpClient::respond(400, "syntax error"));
    CHECK_THROWS_AS(client.run("bogus"), TransportError);
}

TEST_CASE("local corpus counts match a brute-force scan") {
    LocalCorpusSource corpus(kFixtures / "corpus_tiny.jsonl", 7);
    CHECK(corpus.total_documents() == 336);

    // Independent tally, straight off the JSONL text.
    std::map<std::string, std::map<std::string, int>> expected;
    std::ifstream in(kFixtures / "corpus_tiny.jsonl");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto day = line.substr(line.find("\"published_at\": \"") + 17, 10);
        auto rest = line;
        std::size_t at = 0;
        while ((at = rest.find("\"Q", at)) != std::string::npos) {
            const auto end = rest.find('"', at + 1);
            expected[rest.substr(at + 1, end - at - 1)][day]++;
            at = end;
        }
    }
    REQUIRE(expected.count("Q312") == 1);
    REQUIRE(expected.count("Q2283") == 1);
    for (const auto& [qid, days] : expected) {
        for (const auto& [day, count] : days) {
            CHECK(corpus.story_count(qid, Tick::parse(day)) == static_cast<std::size_t>(count));
        }
    }
    CHECK(corpus.story_count("Q312", T("2023-01-21")) == 30);  // spike day
    CHECK(corpus.story_count("Q312", T("2024-01-01")) == 0);
    CHECK(corpus.story_count("Q999", T("2023-01-01")) == 0);
}

TEST_CASE("local corpus sampling is capped, unique, and deterministic") {
    LocalCorpusSource corpus(kFixtures / "corpus_tiny.jsonl", 7);
    NewsQuery q;
    q.entity = make_entity("Q312", "Apple");
    q.tick = T("2023-01-21");
    q.limit = 20;

    const auto sampled = corpus.fetch_stories(q);
    REQUIRE(sampled.size() == 20);  // pool of 30, capped at the limit
    std::set<std::string> ids;
    for (const auto& d : sampled) {
        CHECK(d.day() == q.tick);
        ids.insert(d.id);
    }
    CHECK(ids.size() == 20);  // without replacement

    CHECK(corpus.fetch_stories(q) == sampled);  // same seed, same answer
    LocalCorpusSource same(kFixtures / "corpus_tiny.jsonl", 7);
    CHECK(same.fetch_stories(q) == sampled);
    LocalCorpusSource other(kFixtures / "corpus_tiny.jsonl", 8);
    CHECK(other.fetch_stories(q) != sampled);

    // Small pools come back whole, in corpus order.
    q.tick = T("2023-01-01");
    const auto whole = corpus.fetch_stories(q);
    CHECK(whole.size() == corpus.story_count("Q312", q.tick));
    CHECK(whole.front().id == "q312-20230101-00");

    q.limit = 0;
    CHECK_THROWS_AS(corpus.fetch_stories(q), std::invalid_argument);
}

TEST_CASE("local corpus logs unknown entities and parses documents fully") {
    LocalCorpusSource corpus(kFixtures / "corpus_tiny.jsonl", 7);
    NewsQuery q;
    q.entity = make_entity("Q999");
    q.tick = T("2023-01-01");
    CHECK(corpus.fetch_stories(q).empty());
    REQUIRE(corpus.log().size() == 1);
    CHECK(corpus.log()[0].find("Q999") != std::string::npos);

    q.entity = make_entity("Q312");
    const auto docs = corpus.fetch_stories(q);
    REQUIRE_FALSE(docs.empty());
    CHECK(docs[0].metadata.count("source") == 1);
    bool some_body = false;
    for (const auto& d : docs) some_body |= d.body.has_value();
    CHECK(some_body);

    TempDir dir("badcorpus");
    testhelpers::write_file(dir / "bad.jsonl", "{\"id\": 1}\n");
    CHECK_THROWS_WITH_AS(LocalCorpusSource(dir / "bad.jsonl"), doctest::Contains("line 1"),
                         DecodeError);
    CHECK_THROWS_AS(LocalCorpusSource(dir / "missing.jsonl"), DecodeError);
}
