#include "iftt_pin/cracker.hpp"

#include <json.hpp>

namespace iftt {

std::vector<PhaseCandidate> crack_phase(const std::vector<ClickEvent>& clicks, int n_buttons,
                                        const std::optional<ButtonMapping>& known)
{
    auto belief = new_belief(n_buttons);
    if (known) belief = seed_evidence(belief, *known);
    for (const auto& c : clicks) belief = apply_click(belief, c);

    std::vector<PhaseCandidate> out;
    for (Digit d : consistent_set(belief).digits()) out.push_back({d, implied_mapping(belief, d)});
    return out;
}

namespace {

struct Search {
    const std::vector<const PhaseReport*>& positions;
    std::vector<std::string> pins;
    std::size_t count = 0;
    bool truncated = false;
    std::string prefix;
    // Per button: bit 0 = some leaf had it Yellow, bit 1 = Grey, bit 2 = unassigned.
    std::vector<unsigned> seen;

    void visit(std::size_t depth, const ButtonMapping& acc)
    {
        if (truncated) return;
        if (depth == positions.size()) {
            if (!acc.extendable_to_valid_total()) return;
            ++count;
            if (count > kMaxPinCandidates) {
                truncated = true;
                return;
            }
            pins.push_back(prefix);
            for (int b = 0; b < acc.n_buttons(); ++b) {
                auto c = acc.get(ButtonId{b});
                seen[static_cast<std::size_t>(b)] |= !c ? 4U : (*c == Color::Yellow ? 1U : 2U);
            }
            return;
        }
        for (const auto& cand : positions[depth]->candidates) {
            if (acc.conflicts_with(cand.mapping)) continue;
            prefix.push_back(static_cast<char>('0' + cand.digit.value()));
            visit(depth + 1, acc.merged(cand.mapping));
            prefix.pop_back();
            if (truncated) return;
        }
    }
};

}  // namespace

CrackReport crack_transcript(const Transcript& t)
{
    const int n = t.config.n_buttons;
    std::optional<ButtonMapping> known;
    if (t.config.mode == Mode::Classic) known = classic_mapping();

    CrackReport report;
    report.mapping_constraints = ButtonMapping(n);
    std::vector<const PhaseReport*> positions;
    for (std::size_t i = 0; i < t.phases.size(); ++i) {
        PhaseReport pr;
        pr.index = i;
        pr.abandoned = i + 1 < t.phases.size() && !t.phases[i].committed;
        pr.candidates = crack_phase(t.phases[i].clicks, n, known);
        report.phases.push_back(std::move(pr));
    }
    for (const auto& pr : report.phases)
        if (!pr.abandoned) positions.push_back(&pr);
    if (positions.empty()) return report;

    Search search{positions, {}, 0, false, {}, std::vector<unsigned>(static_cast<std::size_t>(n), 0U)};
    search.visit(0, known ? *known : ButtonMapping(n));

    report.truncated = search.truncated;
    report.candidate_count = search.count;
    if (!search.truncated) {
        report.pin_candidates = std::move(search.pins);
        for (int b = 0; b < n; ++b) {
            unsigned s = search.seen[static_cast<std::size_t>(b)];
            if (s == 1U) report.mapping_constraints.set(ButtonId{b}, Color::Yellow);
            if (s == 2U) report.mapping_constraints.set(ButtonId{b}, Color::Grey);
        }
    }
    report.unique = !report.truncated && report.candidate_count == 1;
    return report;
}

std::string report_to_json(const CrackReport& report)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["phases"] = ordered_json::array();
    for (const auto& p : report.phases) {
        ordered_json jp;
        jp["index"] = p.index;
        jp["abandoned"] = p.abandoned;
        jp["count"] = p.candidates.size();
        jp["candidates"] = ordered_json::array();
        for (const auto& c : p.candidates)
            jp["candidates"].push_back(ordered_json{{"digit", c.digit.value()}, {"mapping", c.mapping.to_string()}});
        doc["phases"].push_back(std::move(jp));
    }
    doc["pin_candidates"] = report.pin_candidates;
    doc["candidate_count"] = report.candidate_count;
    doc["truncated"] = report.truncated;
    doc["mapping"] = report.mapping_constraints.to_string();
    doc["unique"] = report.unique;
    return doc.dump(2) + "\n";
}

}  // namespace iftt
