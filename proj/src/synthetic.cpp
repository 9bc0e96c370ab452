#include "provsum/synthetic.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string_view>

#include "provsum/resources.hpp"

namespace provsum {

namespace {

constexpr Timestamp kSessionStart = 1'700'000'000'000;

constexpr std::array<std::string_view, 164> kTopicWords = {
    "harbor",     "cargo",      "freighter",  "container",  "customs",    "manifest",
    "dock",       "crane",      "pier",       "tanker",     "bridge",     "explosive",
    "detonator",  "blueprint",  "engineer",   "tunnel",     "railway",    "locomotive",
    "junction",   "signal",     "vaccine",    "laboratory", "pathogen",   "sample",
    "clinic",     "outbreak",   "quarantine", "virus",      "antidote",   "hospital",
    "diamond",    "jeweler",    "auction",    "vault",      "smuggler",   "gemstone",
    "appraisal",  "courier",    "bracelet",   "necklace",   "casino",     "wager",
    "croupier",   "chips",      "roulette",   "jackpot",    "bookmaker",  "lottery",
    "racetrack",  "betting",    "pharmacy",   "narcotics",  "chemist",    "pill",
    "dosage",     "prescription","syringe",   "overdose",   "trafficker", "precursor",
    "satellite",  "antenna",    "frequency",  "intercept",  "cipher",     "encryption",
    "transmitter","receiver",   "broadcast",  "radio",      "aircraft",   "hangar",
    "runway",     "pilot",      "cockpit",    "airstrip",   "propeller",  "fuel",
    "altitude",   "glider",     "embassy",    "diplomat",   "visa",       "passport",
    "consulate",  "treaty",     "ambassador", "asylum",     "envoy",      "summit",
    "election",   "ballot",     "candidate",  "campaign",   "donor",      "rally",
    "senator",    "poll",       "voter",      "precinct",   "mine",       "ore",
    "excavator",  "quarry",     "copper",     "mineral",    "drill",      "shaft",
    "geologist",  "nickel",     "software",   "malware",    "server",     "firewall",
    "botnet",     "exploit",    "password",   "hacker",     "database",   "ransom",
    "orchard",    "harvest",    "tractor",    "fertilizer", "grain",      "silo",
    "irrigation", "livestock",  "barn",       "pesticide",  "stadium",    "athlete",
    "referee",    "tournament", "trophy",     "coach",      "doping",     "sponsor",
    "ticket",     "league",     "museum",     "painting",   "sculpture",  "curator",
    "gallery",    "forgery",    "canvas",     "exhibit",    "restorer",   "collector",
    "reactor",    "uranium",    "centrifuge", "isotope",    "plutonium",  "warhead",
    "missile",    "launcher",   "turbine",    "generator",  "pipeline",   "refinery",
    "petroleum",  "barrel"};

constexpr std::array<std::string_view, 24> kBackgroundWords = {
    "report",  "meeting", "transfer", "payment", "contact",  "account",
    "travel",  "source",  "office",   "phone",   "message",  "network",
    "funds",   "agent",   "contract", "records", "schedule", "address",
    "invoice", "witness", "vehicle",  "package", "evening",  "morning"};

constexpr std::array<std::string_view, 24> kSurnames = {
    "Perez",   "Novak",    "Haddad",  "Okafor", "Ivanova", "Silva",
    "Moreau",  "Tanaka",   "Kowalski","Mendes", "Rahman",  "Fischer",
    "Larsen",  "Costa",    "Yilmaz",  "Petrov", "Ortega",  "Nakamura",
    "Bauer",   "Castillo", "Dubois",  "Sato",   "Vargas",  "Ahmadi"};

// Bounded draws straight from the engine: std distributions are not
// reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  template <class Container>
  const auto& pick(const Container& c) {
    return c[below(c.size())];
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string pseudo_word(Rng& rng) {
  static constexpr std::string_view consonants = "bdfgklmnprstvz";
  static constexpr std::string_view vowels = "aeiou";
  std::string w;
  for (int s = 0; s < 3; ++s) {
    w.push_back(consonants[rng.below(consonants.size())]);
    w.push_back(vowels[rng.below(vowels.size())]);
  }
  return w;
}

struct Phase {
  std::vector<std::string> terms;
  std::vector<std::string> people;
  std::vector<std::string> places;
  std::vector<std::size_t> docs;
};

std::vector<std::string> phase_people(Rng& rng, std::size_t count,
                                      std::set<std::string>& used) {
  const auto& names = Resources::bundled().given_names;
  std::vector<std::string> out;
  for (int attempt = 0; out.size() < count; ++attempt) {
    auto name = names[rng.below(names.size())] + " " + std::string(rng.pick(kSurnames));
    if (used.insert(name).second || attempt > 100) out.push_back(name);
  }
  return out;
}

std::string make_sentence(Rng& rng, const Phase& phase) {
  const auto& t1 = rng.pick(phase.terms);
  const auto& t2 = rng.pick(phase.terms);
  const auto& t3 = rng.pick(phase.terms);
  const std::string bg(rng.pick(kBackgroundWords));
  const auto& person = rng.pick(phase.people);
  const auto& other = &person == &phase.people.front() ? phase.people.back() : phase.people.front();
  const auto& place = rng.pick(phase.places);
  switch (rng.below(6)) {
    case 0:
      return person + " met " + other + " in " + place + " to discuss the " + t1 + " and the " +
             t2 + ".";
    case 1:
      return "The " + bg + " mentions a " + t1 + " near " + place + ".";
    case 2:
      return "Records show the " + t1 + " and " + t2 + " were linked to a " + bg + ".";
    case 3:
      return person + " reported " + t1 + " activity involving the " + t2 + " and " + t3 + ".";
    case 4:
      return "A " + bg + " from " + place + " confirms the " + t1 + " " + t2 + " shipment.";
    default:
      return "Sources say " + person + " handled the " + t1 + " for the " + bg + ".";
  }
}

}  // namespace

SyntheticWorkspace generate_synthetic(std::uint64_t seed, int n_docs, int n_events,
                                      int n_phases) {
  if (n_phases < 1) throw InvalidArgument("n_phases must be at least 1");
  if (n_events < n_phases) throw InvalidArgument("n_events must be at least n_phases");
  if (n_docs < n_phases) throw InvalidArgument("n_docs must be at least n_phases");

  Rng rng(seed);
  const auto phases_n = static_cast<std::size_t>(n_phases);
  constexpr std::size_t kTermsPerPhase = 10;

  // Disjoint topic vocabularies.
  std::vector<std::string> pool(kTopicWords.begin(), kTopicWords.end());
  rng.shuffle(pool);
  std::set<std::string> used_terms(pool.begin(), pool.end());
  for (auto w : kBackgroundWords) used_terms.emplace(w);
  std::vector<Phase> phases(phases_n);
  std::size_t next = 0;
  for (auto& phase : phases) {
    while (phase.terms.size() < kTermsPerPhase) {
      if (next < pool.size()) {
        phase.terms.push_back(pool[next++]);
      } else {
        auto w = pseudo_word(rng);
        if (used_terms.insert(w).second) phase.terms.push_back(w);
      }
    }
  }

  // Entities: distinct people per phase; places cycle through the gazetteer.
  std::set<std::string> used_people;
  auto locations = Resources::bundled().locations;
  rng.shuffle(locations);
  for (std::size_t p = 0; p < phases_n; ++p) {
    phases[p].people = phase_people(rng, 2, used_people);
    phases[p].places = {locations[(2 * p) % locations.size()],
                        locations[(2 * p + 1) % locations.size()]};
  }

  SyntheticWorkspace out;
  const auto docs_n = static_cast<std::size_t>(n_docs);
  out.documents.reserve(docs_n);
  for (std::size_t p = 0; p < phases_n; ++p) {
    const auto first = p * docs_n / phases_n;
    const auto last = (p + 1) * docs_n / phases_n;
    for (std::size_t d = first; d < last; ++d) {
      auto& phase = phases[p];
      Document doc;
      char id[32];
      std::snprintf(id, sizeof id, "doc-%03zu", d + 1);
      doc.id = id;
      doc.title = capitalize(phase.terms[rng.below(phase.terms.size())]) + " " +
                  std::string(rng.pick(kBackgroundWords));
      const auto sentences = 4 + rng.below(4);
      for (std::size_t s = 0; s < sentences; ++s) {
        if (s > 0) doc.body += ' ';
        doc.body += make_sentence(rng, phase);
      }
      phase.docs.push_back(out.documents.size());
      out.documents.push_back(std::move(doc));
    }
  }

  out.session.id = "synthetic-" + std::to_string(seed);
  out.session.analyst = "analyst-" + std::to_string(seed % 100);
  out.session.corpus_ref = "synthetic-corpus-" + std::to_string(seed);

  const auto events_n = static_cast<std::size_t>(n_events);
  Timestamp ts = kSessionStart;
  std::int64_t seq = 0;
  for (std::size_t p = 0; p < phases_n; ++p) {
    const auto& phase = phases[p];
    const auto count = events_n / phases_n + (p < events_n % phases_n ? 1 : 0);
    std::string last_doc = out.documents[phase.docs.front()].id;
    for (std::size_t k = 0; k < count; ++k) {
      InteractionEvent ev;
      ev.seq = ++seq;
      if (seq > 1) ts += 5000 + static_cast<Timestamp>(rng.below(20001));
      ev.timestamp = ts;
      const double roll = k == 0 ? 0.0 : rng.unit();
      if (roll < 0.55) {
        ev.kind = EventKind::DocOpen;
        last_doc = out.documents[phase.docs[rng.below(phase.docs.size())]].id;
        ev.doc_id = last_doc;
      } else if (roll < 0.75) {
        ev.kind = EventKind::Search;
        ev.text = rng.pick(phase.terms);
        if (rng.unit() < 0.5) ev.text = *ev.text + " " + rng.pick(phase.terms);
      } else if (roll < 0.85) {
        ev.kind = EventKind::Highlight;
        ev.doc_id = last_doc;
        ev.text = rng.pick(phase.terms) + " " + std::string(rng.pick(kBackgroundWords));
      } else if (roll < 0.90) {
        ev.kind = EventKind::Note;
        ev.text = "Check " + rng.pick(phase.terms) + " link to " + rng.pick(phase.people) + ".";
      } else {
        ev.kind = EventKind::Other;
        ev.meta["original_kind"] = rng.unit() < 0.5 ? "Scroll" : "Resize";
      }
      if (k == 0 && p > 0) out.boundary_event_seqs.push_back(ev.seq);
      out.event_phase.push_back(static_cast<int>(p));
      out.session.events.push_back(std::move(ev));
    }
  }

  for (const auto& phase : phases) out.phase_terms.push_back(phase.terms);
  return out;
}

}  // namespace provsum
