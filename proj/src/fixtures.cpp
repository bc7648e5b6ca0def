#include "ctop/fixtures.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "ctop/generate.hpp"

namespace ctop {

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

// The 6-vertex graph that appears three times in the suite (fig3a, fig6,
// fig9): feasible at k=2 with 12 valid orders.
const EdgeList kSixCycleChord = {{0, 1}, {0, 2}, {0, 5}, {1, 2}, {1, 3}, {1, 5},
                                 {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}};

std::vector<Fixture> build() {
    std::vector<Fixture> out;

    out.push_back({"fig3a",
                   Graph(6, kSixCycleChord),
                   {{2, true, 12, std::nullopt}}});

    out.push_back({"fig4",
                   Graph(6, {{0, 1}, {0, 5}, {1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 4}, {4, 5}}),
                   {{2, false, 0, 2}, {3, false, 0, 1}}});

    out.push_back({"fig5a",
                   Graph(5, {{0, 1}, {0, 2}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}}),
                   {{3, false, 0, 2}}});

    out.push_back({"fig5b",
                   Graph(5, {{0, 1}, {0, 2}, {0, 4}, {1, 2}, {1, 4}, {2, 3}, {3, 4}}),
                   {{2, false, 0, 3}}});

    out.push_back({"fig6",
                   Graph(6, kSixCycleChord),
                   {{2, true, 12, std::nullopt}}});

    out.push_back({"fig7",
                   Graph(8, {{0, 1}, {0, 2}, {0, 6}, {1, 2}, {1, 3}, {1, 6}, {2, 3}, {2, 4},
                             {2, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {4, 7}, {5, 6},
                             {5, 7}}),
                   {{2, true, 32, std::nullopt}}});

    out.push_back({"fig8",
                   Graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4},
                             {2, 5}, {3, 4}, {3, 5}, {4, 5}}),
                   {{3, true, 4, std::nullopt}}});

    out.push_back({"fig9",
                   Graph(6, kSixCycleChord),
                   {{2, true, 12, std::nullopt}}});

    out.push_back({"fig12a",
                   Graph(5, {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {3, 4}}),
                   {{3, false, 0, 1}}});

    out.push_back({"fig12b",
                   Graph(5, {{0, 1}, {0, 3}, {1, 2}, {1, 3}, {1, 4}}),
                   {{3, false, 0, 1}}});

    out.push_back({"w7", gen_wheel(7), {{3, false, 0, 2}}});

    return out;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = build();
    return all;
}

const Fixture& fixture(const std::string& name) {
    for (const Fixture& f : fixtures())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown fixture: " + name);
}

std::vector<FixtureExpectation> parse_expect(const std::string& text) {
    std::vector<FixtureExpectation> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag)) continue;  // blank
        if (tag != "k") throw std::runtime_error("expect line must start with 'k': " + line);

        FixtureExpectation e;
        std::string verdict;
        if (!(fields >> e.k >> verdict) || e.k < 1)
            throw std::runtime_error("bad expect line: " + line);
        if (verdict == "feasible")
            e.feasible = true;
        else if (verdict == "infeasible")
            e.feasible = false;
        else
            throw std::runtime_error("expect verdict must be feasible or infeasible: " + line);

        std::string key;
        while (fields >> key) {
            if (key == "count") {
                std::uint64_t c;
                if (!(fields >> c)) throw std::runtime_error("count needs a value: " + line);
                e.order_count = c;
            } else if (key == "check") {
                int c;
                if (!(fields >> c) || c < 1 || c > 5)
                    throw std::runtime_error("check needs a value in 1..5: " + line);
                e.pipeline_check = c;
            } else {
                throw std::runtime_error("unknown expect key '" + key + "': " + line);
            }
        }
        out.push_back(e);
    }
    if (out.empty()) throw std::runtime_error("expect file holds no expectations");
    return out;
}

std::string serialize_expect(const std::vector<FixtureExpectation>& expect) {
    std::ostringstream out;
    for (const auto& e : expect) {
        out << "k " << e.k << " " << (e.feasible ? "feasible" : "infeasible");
        if (e.order_count) out << " count " << *e.order_count;
        if (e.pipeline_check) out << " check " << *e.pipeline_check;
        out << "\n";
    }
    return out.str();
}

}  // namespace ctop
