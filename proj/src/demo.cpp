#include "kgalab/demo.hpp"

#include "kgalab/attacks.hpp"

namespace kga {

namespace {

const std::vector<std::string> kFixtureUniverse = {"invoice", "salary", "tax", "audit"};

std::vector<AnnotatedDoc> fixture_corpus() {
    auto bytes = [](const char* s) {
        std::string str(s);
        return std::vector<std::uint8_t>(str.begin(), str.end());
    };
    return {
        {bytes("Q1 invoice ledger"), {"invoice", "tax"}},
        {bytes("March payroll summary"), {"salary"}},
        {bytes("External audit findings"), {"audit", "tax"}},
    };
}

Dictionary fixture_dictionary() {
    std::vector<std::string> words = kFixtureUniverse;
    for (int i = 0; i < 8; ++i) words.push_back("decoy-" + std::to_string(i));
    return Dictionary(std::move(words));
}

Json demo_vulnerable(std::uint64_t seed) {
    DeterministicRandom rng(seed);
    KeywordUniverse universe(kFixtureUniverse);
    PublicParams params = setup(128, ParamsMode::vulnerable, rng, /*transcripts=*/true);
    OwnerKeyMaterial owner = keygen_owner(params, universe, rng, "demo-owner");
    UserKeyMaterial user = keygen_user(params, universe.size(), rng, "demo-user");
    UserPublicKey upk{user.id, user.pk};
    OwnerPublicKey opk{owner.id, owner.pk};

    auto [records, index] =
        ingest(params, universe, fixture_corpus(), owner, upk, *params.doc_key, rng);

    Trapdoor legit = trapdoor_gen(params, universe, {"tax"}, user, opk, owner.r);
    MatchResult legit_res = search(index, legit);

    Dictionary dict = fixture_dictionary();
    AttackReport a1 = attack_index_kga(params, index, opk, dict);
    Trapdoor target = trapdoor_gen(params, universe, {"salary"}, user, opk, owner.r);
    AttackReport a2 = attack_trapdoor_kga(params, target, upk, dict);
    AttackReport a3c1 = demo_shared_r_forgery(params, universe, owner.r, opk, user, "audit", index);
    AttackReport a3c2 = demo_mismatched_r_failure(params, universe, owner, user, "invoice", 5, rng);
    std::vector<std::vector<std::uint8_t>> cts;
    for (const auto& r : records) cts.push_back(r.ciphertext);
    AttackReport a4 = attack_public_key_decrypt(params, cts);

    Json mode;
    mode["mode"] = "vulnerable";
    mode["legitimate_search"] = legit_res.to_json();
    mode["attacks"] = Json{{"I", a1.to_json(false)},
                           {"II", a2.to_json(false)},
                           {"III-case1", a3c1.to_json(false)},
                           {"III-case2", a3c2.to_json(false)},
                           {"IV", a4.to_json(false)}};
    Json matrix;
    matrix["correctness"] = legit_res.overall;
    matrix["attack_I_succeeds"] = a1.success;
    matrix["attack_II_succeeds"] = a2.success;
    matrix["attack_III_case1_succeeds"] = a3c1.success;
    matrix["attack_III_case2_failure_demonstrated"] = a3c2.success;
    matrix["attack_IV_succeeds"] = a4.success;
    mode["matrix"] = matrix;
    bool all = true;
    for (const auto& [k, v] : matrix.items()) all = all && v.get<bool>();
    mode["all_expected"] = all;
    return mode;
}

Json demo_hardened(std::uint64_t seed) {
    DeterministicRandom rng(seed);
    KeywordUniverse universe(kFixtureUniverse);
    auto [params, msk] = h_setup(128, rng, /*transcripts=*/true);
    OwnerKeyMaterial owner = keygen_owner(params, universe, rng, "demo-owner");
    h_register_owner(msk, owner);
    HardenedUserKey user = h_keygen_user(msk, params, universe.size(), rng, "demo-user");
    UserPublicKey upk{user.id, user.pk};
    OwnerPublicKey opk{owner.id, owner.pk};
    OwnerSearchCredential cred = h_enroll_owner(msk, params, opk);
    std::array<std::uint8_t, 32> doc_key{};  // held privately by the owner now
    rng.fill(doc_key);

    auto [records, index] =
        ingest(params, universe, fixture_corpus(), owner, upk, doc_key, rng, msk.alpha);

    Trapdoor legit = h_trapdoor_gen(params, universe, {"tax"}, user, cred);
    MatchResult legit_res = h_search(index, legit);

    Dictionary dict = fixture_dictionary();
    AttackReport a1 = attack_index_kga(params, index, opk, dict);
    Trapdoor target = h_trapdoor_gen(params, universe, {"salary"}, user, cred);
    AttackReport a2 = attack_trapdoor_kga(params, target, upk, dict);
    std::vector<std::vector<std::uint8_t>> cts;
    for (const auto& r : records) cts.push_back(r.ciphertext);
    AttackReport a4 = attack_public_key_decrypt(params, cts);

    // randomness mismatch still breaks correctness: a credential minted under
    // the wrong r_i produces trapdoors that never match
    MasterSecret wrong = msk;
    wrong.owner_r[owner.id] = rng.nonzero_scalar();
    OwnerSearchCredential bad_cred = h_enroll_owner(wrong, params, opk);
    Trapdoor mismatched = h_trapdoor_gen(params, universe, {"tax"}, user, bad_cred);
    bool mismatch_fails = !h_search(index, mismatched).overall;

    Json mode;
    mode["mode"] = "hardened";
    mode["legitimate_search"] = legit_res.to_json();
    mode["attacks"] = Json{{"I", a1.to_json(false)},
                           {"II", a2.to_json(false)},
                           {"IV", a4.to_json(false)}};
    Json matrix;
    matrix["correctness"] = legit_res.overall;
    matrix["attack_I_resisted"] = !a1.success;
    matrix["attack_II_resisted"] = !a2.success;
    matrix["attack_III_case2_failure_demonstrated"] = mismatch_fails;
    matrix["attack_IV_resisted"] = !a4.success;
    mode["matrix"] = matrix;
    bool all = true;
    for (const auto& [k, v] : matrix.items()) all = all && v.get<bool>();
    mode["all_expected"] = all;
    return mode;
}

}  // namespace

Json run_demo(const std::string& mode, std::uint64_t seed) {
    Json report;
    report["schema"] = "kga-lab/demo-report/v1";
    report["seed"] = seed;
    Json modes = Json::array();
    if (mode == "vulnerable" || mode == "both") modes.push_back(demo_vulnerable(seed));
    if (mode == "hardened" || mode == "both") modes.push_back(demo_hardened(seed));
    if (modes.empty()) throw Error("unknown demo mode: " + mode);
    report["modes"] = modes;
    bool all = true;
    for (const auto& m : modes) all = all && m["all_expected"].get<bool>();
    report["all_expected"] = all;
    return report;
}

}  // namespace kga
