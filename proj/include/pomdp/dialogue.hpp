#pragma once

// Generator for the tour-guide dialogue POMDP.
//
// State: request type {visit, ask} x place {gate, hall} x property
// {height, size} x hidden system state {normal, silent, error-noisy,
// error-silent, overheard} = 40 states.
//
// Actions (18): four answers (place x property), two go-to (place),
// ask-repeat, ask-type, ask-place, ask-property, six declares, ignore and
// troubleshoot.
//
// Observations (25): three low-level channel/signal observations, yes, no,
// and the 20 meaningful requests (every non-empty partial assignment of
// type/place/property except those pairing "visit" with a property).
//
// None of the probabilities are published; they are knobs with documented
// defaults. Intention is frozen under repair actions and resampled uniformly
// after a domain action. Hidden dynamics are shared by every action except
// troubleshoot.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pomdp/error.hpp"
#include "pomdp/factored.hpp"
#include "pomdp/text.hpp"

namespace pomdp::dialogue {

inline const std::array<std::string, 4> kPresets = {"standard", "lower-cost", "noisy", "noisy-lower-cost"};

inline const std::array<std::string, 3> kLowLevel = {"no-channel-no-signal", "no-channel-signal",
                                                     "channel-no-signal"};

/// Reward table order matches the simulation report layout.
inline const std::array<std::string, 11> kRewardCategories = {
    "ask-repeat",         "ignore-wrong",        "ask-intention",        "declare",
    "ignore-right",       "troubleshoot-wrong",  "action-wrong",         "right-type-no-param",
    "right-type-has-param", "domain-right",      "troubleshoot-right"};

struct DialogueParams {
    std::string preset = "standard";

    // Hidden-state dynamics shared by all actions except troubleshoot.
    double enter_silent = 0.02;
    double enter_error_noisy = 0.02;
    double enter_error_silent = 0.02;
    double enter_overheard = 0.02;
    double leave_silent = 0.5;
    double leave_overheard = 0.5;
    double error_self_repair = 0.0;
    double troubleshoot_fix = 0.9;

    // Observation model in the normal hidden state.
    double full_request = 0.5;      // complete, correct request
    double partial_request = 0.1;   // consistent partial request
    double wrong_request = 0.3;     // request inconsistent with the intention
    double answer_correct = 0.9;    // correct reply to an ask action
    double answer_wrong = 0.05;     // wrong reply to an ask action
    double confirm_correct = 0.9;   // correct yes/no to a declare action
    double confirm_wrong = 0.03;    // wrong yes/no to a declare action
    double troubleshoot_speech = 0.5;  // speech mass kept right after troubleshooting
    double noisy_wrong_share = 0.5;    // noisy presets: share of lost correct mass that turns wrong

    // Abnormal hidden states.
    double silent_signal_loss = 0.8;     // silent: channel-no-signal mass
    double error_silent_dead = 0.8;      // error-silent: no-channel-no-signal mass
    double error_noisy_garbage = 0.7;    // error-noisy: random utterance mass
    double overheard_speech = 0.6;       // overheard: random request mass

    // Rewards, one per category, in kRewardCategories order.
    std::array<double, 11> rewards = {-4, -3, -2, -1, 0, -20, -20, -15, -10, 10, 20};

    double discount = 0.9;

    void validate() const;
};

/// Derives a preset from standard-preset knobs. The noisy presets double the
/// abnormal-entry probabilities and halve every correct-observation mass,
/// moving half of the removed mass to false observations and half to
/// uninformative ones. The lower-cost presets halve the four wrong-action
/// costs.
inline DialogueParams apply_preset(DialogueParams p, std::string_view preset) {
    const bool noisy = preset == "noisy" || preset == "noisy-lower-cost";
    const bool cheap = preset == "lower-cost" || preset == "noisy-lower-cost";
    if (!noisy && !cheap && preset != "standard") throw ConfigError("unknown preset '" + std::string(preset) + "'");
    p.preset = std::string(preset);
    if (noisy) {
        p.enter_silent *= 2;
        p.enter_error_noisy *= 2;
        p.enter_error_silent *= 2;
        p.enter_overheard *= 2;
        const double lost_req = (p.full_request + p.partial_request) / 2;
        p.full_request /= 2;
        p.partial_request /= 2;
        p.wrong_request += lost_req * p.noisy_wrong_share;
        const double lost_ans = p.answer_correct / 2;
        p.answer_correct /= 2;
        p.answer_wrong += lost_ans * p.noisy_wrong_share;
        const double lost_conf = p.confirm_correct / 2;
        p.confirm_correct /= 2;
        p.confirm_wrong += lost_conf * p.noisy_wrong_share;
    }
    if (cheap) {
        for (std::size_t i = 5; i <= 8; ++i) p.rewards[i] /= 2;
    }
    return p;
}

inline DialogueParams preset_params(std::string_view preset) { return apply_preset(DialogueParams{}, preset); }

inline void DialogueParams::validate() const {
    bool known = false;
    for (const auto& n : kPresets) known = known || n == preset;
    if (!known) throw ConfigError("unknown preset '" + preset + "'");
    const double probs[] = {enter_silent, enter_error_noisy, enter_error_silent, enter_overheard,
                            leave_silent, leave_overheard, error_self_repair, troubleshoot_fix,
                            full_request, partial_request, wrong_request, answer_correct, answer_wrong,
                            confirm_correct, confirm_wrong,
                            troubleshoot_speech, noisy_wrong_share, silent_signal_loss, error_silent_dead, error_noisy_garbage,
                            overheard_speech};
    for (double v : probs) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("dialogue parameter outside [0,1]");
    }
    if (enter_silent + enter_error_noisy + enter_error_silent + enter_overheard > 1.0 + kProbTolerance) {
        throw ConfigError("abnormal entry probabilities exceed 1");
    }
    if (full_request + partial_request + wrong_request > 1.0 + kProbTolerance) {
        throw ConfigError("request observation probabilities exceed 1");
    }
    if (answer_correct + answer_wrong > 1.0 + kProbTolerance) throw ConfigError("answer probabilities exceed 1");
    if (confirm_correct + confirm_wrong > 1.0 + kProbTolerance) throw ConfigError("confirm probabilities exceed 1");
    if (!(discount > 0.0 && discount < 1.0)) throw ConfigError("discount outside (0,1)");
}

/// Applies `key = value` overrides (one per line, '#' comments) on top of the
/// standard defaults, then derives the named preset from the result. Reward
/// keys are `reward.<category>`.
inline DialogueParams parse_params(std::string_view text, std::string_view preset) {
    DialogueParams p;
    std::map<std::string, double*, std::less<>> fields = {
        {"enter_silent", &p.enter_silent},
        {"enter_error_noisy", &p.enter_error_noisy},
        {"enter_error_silent", &p.enter_error_silent},
        {"enter_overheard", &p.enter_overheard},
        {"leave_silent", &p.leave_silent},
        {"leave_overheard", &p.leave_overheard},
        {"error_self_repair", &p.error_self_repair},
        {"troubleshoot_fix", &p.troubleshoot_fix},
        {"full_request", &p.full_request},
        {"partial_request", &p.partial_request},
        {"wrong_request", &p.wrong_request},
        {"answer_correct", &p.answer_correct},
        {"answer_wrong", &p.answer_wrong},
        {"confirm_correct", &p.confirm_correct},
        {"confirm_wrong", &p.confirm_wrong},
        {"troubleshoot_speech", &p.troubleshoot_speech},
        {"noisy_wrong_share", &p.noisy_wrong_share},
        {"silent_signal_loss", &p.silent_signal_loss},
        {"error_silent_dead", &p.error_silent_dead},
        {"error_noisy_garbage", &p.error_noisy_garbage},
        {"overheard_speech", &p.overheard_speech},
        {"discount", &p.discount},
    };
    for (std::size_t i = 0; i < kRewardCategories.size(); ++i) fields["reward." + kRewardCategories[i]] = &p.rewards[i];

    text::Lines lines(text);
    std::size_t no = 0;
    std::string_view line;
    while (lines.next(no, line)) {
        auto [key, value] = text::split_once(line, '=');
        key = text::trim(key);
        auto it = fields.find(key);
        if (it == fields.end()) throw ParseError(no, "unknown parameter '" + std::string(key) + "'");
        *it->second = text::parse_double(text::trim(value), no);
    }
    p.validate();
    p = apply_preset(p, preset);
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// Observation alphabet

struct Request {
    int type = -1;      // -1 unspecified, 0 visit, 1 ask
    int place = -1;     // 0 gate, 1 hall
    int property = -1;  // 0 height, 1 size
};

inline const std::array<std::string, 2> kTypes = {"visit", "ask"};
inline const std::array<std::string, 2> kPlaces = {"gate", "hall"};
inline const std::array<std::string, 2> kProperties = {"height", "size"};
inline const std::array<std::string, 5> kHidden = {"normal", "silent", "error-noisy", "error-silent", "overheard"};

inline std::vector<Request> all_requests() {
    std::vector<Request> out;
    for (int t = -1; t < 2; ++t) {
        for (int p = -1; p < 2; ++p) {
            for (int q = -1; q < 2; ++q) {
                if (t == -1 && p == -1 && q == -1) continue;
                if (t == 0 && q != -1) continue;
                out.push_back({t, p, q});
            }
        }
    }
    return out;
}

inline std::string request_name(const Request& r) {
    std::string n = "req-";
    bool first = true;
    auto add = [&](const std::string& part) {
        if (!first) n += '+';
        n += part;
        first = false;
    };
    if (r.type >= 0) add(kTypes[static_cast<std::size_t>(r.type)]);
    if (r.place >= 0) add(kPlaces[static_cast<std::size_t>(r.place)]);
    if (r.property >= 0) add(kProperties[static_cast<std::size_t>(r.property)]);
    return n;
}

inline bool is_full(const Request& r) {
    if (r.type == 0) return r.place >= 0;
    return r.type == 1 && r.place >= 0 && r.property >= 0;
}

// Every stated component agrees with the intention; visitors never state a property.
inline bool consistent(const Request& r, int type, int place, int property) {
    if (r.type >= 0 && r.type != type) return false;
    if (r.place >= 0 && r.place != place) return false;
    if (r.property >= 0 && (type == 0 || r.property != property)) return false;
    return true;
}

inline std::vector<std::string> observation_names() {
    std::vector<std::string> out(kLowLevel.begin(), kLowLevel.end());
    out.emplace_back("yes");
    out.emplace_back("no");
    for (const auto& r : all_requests()) out.push_back(request_name(r));
    return out;
}

/// Report category of an observation label: no-info, yes-no, partial, full
/// (or other for labels outside the dialogue alphabet).
inline std::string observation_category(std::string_view name) {
    for (const auto& l : kLowLevel) {
        if (name == l) return "no-info";
    }
    if (name == "yes" || name == "no") return "yes-no";
    if (name.substr(0, 4) == "req-") {
        for (const auto& r : all_requests()) {
            if (request_name(r) == name) return is_full(r) ? "full" : "partial";
        }
    }
    return "other";
}

inline std::vector<std::string> action_names() {
    std::vector<std::string> a;
    for (const auto& p : kPlaces) {
        for (const auto& q : kProperties) a.push_back("answer-" + p + "-" + q);
    }
    for (const auto& p : kPlaces) a.push_back("goto-" + p);
    a.insert(a.end(), {"ask-repeat", "ask-type", "ask-place", "ask-property"});
    for (const auto& t : kTypes) a.push_back("declare-" + t);
    for (const auto& p : kPlaces) a.push_back("declare-" + p);
    for (const auto& q : kProperties) a.push_back("declare-" + q);
    a.insert(a.end(), {"ignore", "troubleshoot"});
    return a;
}

// ---------------------------------------------------------------------------
// Spec construction

namespace detail {

enum Var : std::size_t { kType = 0, kPlace = 1, kProperty = 2, kHiddenVar = 3 };
enum Hidden : std::size_t { kNormal = 0, kSilent = 1, kErrorNoisy = 2, kErrorSilent = 3, kOverheard = 4 };

inline Cpt identity_cpt(std::size_t var, std::size_t size) {
    Cpt c{{var}, size, std::vector<double>(size * size, 0.0)};
    for (std::size_t i = 0; i < size; ++i) c.table[i * size + i] = 1.0;
    return c;
}

inline Cpt uniform_cpt(std::size_t size) {
    return Cpt{{}, size, std::vector<double>(size, 1.0 / static_cast<double>(size))};
}

inline Cpt hidden_cpt(const DialogueParams& p, bool troubleshoot) {
    Cpt c{{kHiddenVar}, 5, std::vector<double>(25, 0.0)};
    auto row = [&c](std::size_t from) { return c.table.data() + from * 5; };
    double* n = row(kNormal);
    n[kSilent] = p.enter_silent;
    n[kErrorNoisy] = p.enter_error_noisy;
    n[kErrorSilent] = p.enter_error_silent;
    n[kOverheard] = p.enter_overheard;
    n[kNormal] = 1.0 - p.enter_silent - p.enter_error_noisy - p.enter_error_silent - p.enter_overheard;
    row(kSilent)[kNormal] = p.leave_silent;
    row(kSilent)[kSilent] = 1.0 - p.leave_silent;
    row(kOverheard)[kNormal] = p.leave_overheard;
    row(kOverheard)[kOverheard] = 1.0 - p.leave_overheard;
    const double repair = troubleshoot ? p.troubleshoot_fix : p.error_self_repair;
    for (std::size_t e : {std::size_t{kErrorNoisy}, std::size_t{kErrorSilent}}) {
        row(e)[kNormal] = repair;
        row(e)[e] = 1.0 - repair;
    }
    return c;
}

enum class Reply { Request, AskType, AskPlace, AskProperty, Declare, Troubleshoot };

struct ObsIndex {
    std::vector<Request> requests = all_requests();
    std::size_t no_channel_no_signal = 0, no_channel_signal = 1, channel_no_signal = 2, yes = 3, no = 4;
    std::size_t request(const Request& r) const {
        for (std::size_t i = 0; i < requests.size(); ++i) {
            const auto& q = requests[i];
            if (q.type == r.type && q.place == r.place && q.property == r.property) return 5 + i;
        }
        throw LookupError("no such request");
    }
    std::size_t size() const { return 5 + requests.size(); }
};

// Observation distribution for one post-state in the abnormal hidden states.
inline void abnormal_row(const DialogueParams& p, std::size_t hidden, const ObsIndex& ix, double* row) {
    const std::size_t n_utter = 2 + ix.requests.size();
    switch (hidden) {
    case kSilent:
        row[ix.channel_no_signal] = p.silent_signal_loss;
        row[ix.no_channel_no_signal] = (1.0 - p.silent_signal_loss) / 2;
        row[ix.no_channel_signal] = (1.0 - p.silent_signal_loss) / 2;
        break;
    case kErrorSilent:
        row[ix.no_channel_no_signal] = p.error_silent_dead;
        row[ix.channel_no_signal] = (1.0 - p.error_silent_dead) / 2;
        row[ix.no_channel_signal] = (1.0 - p.error_silent_dead) / 2;
        break;
    case kErrorNoisy:
        row[ix.no_channel_signal] = 1.0 - p.error_noisy_garbage;
        for (std::size_t o = 3; o < 3 + n_utter; ++o) row[o] = p.error_noisy_garbage / static_cast<double>(n_utter);
        break;
    case kOverheard:
        row[ix.no_channel_signal] = 1.0 - p.overheard_speech;
        for (std::size_t i = 0; i < ix.requests.size(); ++i) {
            row[5 + i] = p.overheard_speech / static_cast<double>(ix.requests.size());
        }
        break;
    default: break;
    }
}

// Normal-state reply: `speech` is split over the intended utterances, wrong
// utterances and the remainder goes to the two "heard something unclear"
// low-level observations.
inline void spread_rest(double* row, const ObsIndex& ix) {
    double sum = 0.0;
    for (std::size_t o = 0; o < ix.size(); ++o) sum += row[o];
    const double rest = 1.0 - sum;
    row[ix.no_channel_signal] += rest / 2;
    row[ix.channel_no_signal] += rest / 2;
}

inline void normal_row(const DialogueParams& p, Reply reply, int declared_var, int declared_value, int type,
                       int place, int property, const ObsIndex& ix, double* row) {
    auto put_uniform = [&](const std::vector<std::size_t>& targets, double mass) {
        if (targets.empty()) return;
        for (std::size_t o : targets) row[o] += mass / static_cast<double>(targets.size());
    };
    switch (reply) {
    case Reply::Request:
    case Reply::Troubleshoot: {
        const double scale = reply == Reply::Troubleshoot ? p.troubleshoot_speech : 1.0;
        std::vector<std::size_t> full, partial, wrong;
        for (std::size_t i = 0; i < ix.requests.size(); ++i) {
            const auto& r = ix.requests[i];
            if (!consistent(r, type, place, property)) wrong.push_back(5 + i);
            else if (is_full(r)) full.push_back(5 + i);
            else partial.push_back(5 + i);
        }
        put_uniform(full, scale * p.full_request);
        put_uniform(partial, scale * p.partial_request);
        put_uniform(wrong, scale * p.wrong_request);
        break;
    }
    case Reply::AskType:
        row[ix.request({type, -1, -1})] += p.answer_correct;
        row[ix.request({1 - type, -1, -1})] += p.answer_wrong;
        break;
    case Reply::AskPlace:
        row[ix.request({-1, place, -1})] += p.answer_correct;
        row[ix.request({-1, 1 - place, -1})] += p.answer_wrong;
        break;
    case Reply::AskProperty:
        if (type == 0) {
            // Visitors answer with their request type; the property is irrelevant.
            row[ix.request({0, -1, -1})] += p.answer_correct;
            row[ix.request({-1, -1, 0})] += p.answer_wrong / 2;
            row[ix.request({-1, -1, 1})] += p.answer_wrong / 2;
        } else {
            row[ix.request({-1, -1, property})] += p.answer_correct;
            row[ix.request({-1, -1, 1 - property})] += p.answer_wrong;
        }
        break;
    case Reply::Declare: {
        bool truth = false;
        if (declared_var == kType) truth = type == declared_value;
        else if (declared_var == kPlace) truth = place == declared_value;
        else truth = type == 1 && property == declared_value;
        row[truth ? ix.yes : ix.no] += p.confirm_correct;
        row[truth ? ix.no : ix.yes] += p.confirm_wrong;
        break;
    }
    }
    spread_rest(row, ix);
}

inline ObservationNet make_onet(const DialogueParams& p, const std::string& name, std::vector<std::string> actions,
                                Reply reply, int declared_var = -1, int declared_value = -1) {
    const ObsIndex ix;
    const std::size_t no = ix.size();
    Cpt c{{kType, kPlace, kProperty, kHiddenVar}, no, std::vector<double>(40 * no, 0.0)};
    for (int t = 0; t < 2; ++t) {
        for (int pl = 0; pl < 2; ++pl) {
            for (int q = 0; q < 2; ++q) {
                for (std::size_t h = 0; h < 5; ++h) {
                    const std::size_t r = ((static_cast<std::size_t>(t) * 2 + static_cast<std::size_t>(pl)) * 2 +
                                           static_cast<std::size_t>(q)) * 5 + h;
                    double* row = c.table.data() + r * no;
                    if (h == kNormal) normal_row(p, reply, declared_var, declared_value, t, pl, q, ix, row);
                    else abnormal_row(p, h, ix, row);
                }
            }
        }
    }
    return {name, std::move(actions), std::move(c)};
}

} // namespace detail

/// Factored form of the dialogue model for the given parameters.
inline FactoredSpec dialogue_spec(const DialogueParams& p) {
    using namespace detail;
    p.validate();
    FactoredSpec spec;
    spec.variables = {
        {"type", {kTypes.begin(), kTypes.end()}},
        {"place", {kPlaces.begin(), kPlaces.end()}},
        {"property", {kProperties.begin(), kProperties.end()}},
        {"hidden", {kHidden.begin(), kHidden.end()}},
    };
    spec.actions = action_names();
    spec.observations = observation_names();
    spec.discount = p.discount;
    spec.start = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {1.0, 0.0, 0.0, 0.0, 0.0}};

    const std::vector<std::string> domain(spec.actions.begin(), spec.actions.begin() + 6);
    std::vector<std::string> repair(spec.actions.begin() + 6, spec.actions.begin() + 17);

    spec.transition_nets.push_back(
        {"repair", repair, {identity_cpt(kType, 2), identity_cpt(kPlace, 2), identity_cpt(kProperty, 2), hidden_cpt(p, false)}});
    spec.transition_nets.push_back(
        {"domain", domain, {uniform_cpt(2), uniform_cpt(2), uniform_cpt(2), hidden_cpt(p, false)}});
    spec.transition_nets.push_back({"troubleshoot",
                                    {"troubleshoot"},
                                    {identity_cpt(kType, 2), identity_cpt(kPlace, 2), identity_cpt(kProperty, 2),
                                     hidden_cpt(p, true)}});

    std::vector<std::string> request_actions = domain;
    request_actions.push_back("ask-repeat");
    spec.observation_nets.push_back(make_onet(p, "request", request_actions, Reply::Request));
    spec.observation_nets.push_back(make_onet(p, "ask-type", {"ask-type"}, Reply::AskType));
    spec.observation_nets.push_back(make_onet(p, "ask-place", {"ask-place"}, Reply::AskPlace));
    spec.observation_nets.push_back(make_onet(p, "ask-property", {"ask-property"}, Reply::AskProperty));
    for (int i = 0; i < 2; ++i) {
        const std::string t = kTypes[static_cast<std::size_t>(i)];
        spec.observation_nets.push_back(make_onet(p, "declare-" + t, {"declare-" + t}, Reply::Declare, kType, i));
    }
    for (int i = 0; i < 2; ++i) {
        const std::string pl = kPlaces[static_cast<std::size_t>(i)];
        spec.observation_nets.push_back(make_onet(p, "declare-" + pl, {"declare-" + pl}, Reply::Declare, kPlace, i));
    }
    for (int i = 0; i < 2; ++i) {
        const std::string q = kProperties[static_cast<std::size_t>(i)];
        spec.observation_nets.push_back(make_onet(p, "declare-" + q, {"declare-" + q}, Reply::Declare, kProperty, i));
    }
    spec.observation_nets.push_back(make_onet(p, "quiet", {"ignore", "troubleshoot"}, Reply::Troubleshoot));

    spec.category_order.assign(kRewardCategories.begin(), kRewardCategories.end());
    const auto& R = p.rewards;
    auto add = [&spec](const std::string& action, std::vector<std::pair<std::size_t, std::size_t>> cond, double value,
                       const std::string& cat) { spec.rewards.push_back({action, std::move(cond), value, cat}); };
    for (std::size_t pl = 0; pl < 2; ++pl) {
        for (std::size_t q = 0; q < 2; ++q) {
            const std::string a = "answer-" + kPlaces[pl] + "-" + kProperties[q];
            add(a, {}, R[6], "action-wrong");
            add(a, {{kType, 1}}, R[7], "right-type-no-param");
            add(a, {{kType, 1}, {kPlace, pl}}, R[8], "right-type-has-param");
            add(a, {{kType, 1}, {kProperty, q}}, R[8], "right-type-has-param");
            add(a, {{kType, 1}, {kPlace, pl}, {kProperty, q}}, R[9], "domain-right");
        }
    }
    for (std::size_t pl = 0; pl < 2; ++pl) {
        const std::string a = "goto-" + kPlaces[pl];
        add(a, {}, R[6], "action-wrong");
        add(a, {{kType, 0}}, R[7], "right-type-no-param");
        add(a, {{kType, 0}, {kPlace, pl}}, R[9], "domain-right");
    }
    add("ask-repeat", {}, R[0], "ask-repeat");
    for (const char* a : {"ask-type", "ask-place", "ask-property"}) add(a, {}, R[2], "ask-intention");
    for (std::size_t i = 10; i < 16; ++i) add(spec.actions[i], {}, R[3], "declare");
    add("ignore", {}, R[1], "ignore-wrong");
    add("ignore", {{kHiddenVar, kSilent}}, R[4], "ignore-right");
    add("ignore", {{kHiddenVar, kOverheard}}, R[4], "ignore-right");
    add("troubleshoot", {}, R[5], "troubleshoot-wrong");
    add("troubleshoot", {{kHiddenVar, kErrorNoisy}}, R[10], "troubleshoot-right");
    add("troubleshoot", {{kHiddenVar, kErrorSilent}}, R[10], "troubleshoot-right");
    return spec;
}

inline PomdpModel build_dialogue_model(const DialogueParams& p) { return compile_factored(dialogue_spec(p)); }

inline PomdpModel build_dialogue_model(std::string_view preset) { return build_dialogue_model(preset_params(preset)); }

} // namespace pomdp::dialogue
