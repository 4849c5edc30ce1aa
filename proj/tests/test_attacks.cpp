#include <fstream>

#include "doctest.h"
#include "kgalab/attacks.hpp"
#include "kgalab/hexutil.hpp"

using namespace kga;

namespace {

Dictionary make_dict(std::size_t size, const std::vector<std::string>& include) {
    std::vector<std::string> words = include;
    for (std::size_t i = 0; words.size() < size; ++i) words.push_back("candidate-" + std::to_string(i));
    return Dictionary(std::move(words));
}

struct Fixture {
    DeterministicRandom rng{42};
    PublicParams params;
    KeywordUniverse universe{{"invoice", "salary", "tax"}};
    OwnerKeyMaterial owner;
    UserKeyMaterial user;

    Fixture(bool transcripts = true) {
        params = setup(128, ParamsMode::vulnerable, rng, transcripts);
        owner = keygen_owner(params, universe, rng, "do1");
        user = keygen_user(params, universe.size(), rng, "u1");
    }

    UserPublicKey user_pub() const { return {user.id, user.pk}; }
    OwnerPublicKey owner_pub() const { return {owner.id, owner.pk}; }

    EncryptedIndex index_for(const std::string& kw) {
        return index_gen(params, universe, {{kw, {"d1"}}}, owner, user_pub(),
                         RPolicy::owner_shared, rng);
    }
};

}  // namespace

TEST_CASE("dictionary rejects duplicates and round-trips") {
    CHECK_THROWS_AS(Dictionary({"a", "a"}), Error);
    Dictionary d({"a", "b"});
    CHECK(Dictionary::from_json(d.to_json()).words() == d.words());
}

TEST_CASE("index KGA recovers the indexed keyword from public data only") {
    Fixture f;
    EncryptedIndex idx = f.index_for("invoice");
    Dictionary dict = make_dict(50, {"invoice"});

    AttackReport rep = attack_index_kga(f.params, idx, f.owner_pub(), dict);
    CHECK(rep.success);
    REQUIRE(rep.recoveries.size() == 1);
    CHECK(rep.recoveries[0].keyword == "invoice");
    CHECK(rep.recoveries[0].position == 1);
    CHECK(rep.candidates_tested == 50);
    // one cached left-hand pairing plus one per candidate
    CHECK(rep.pairings_evaluated == 1 + 50);

    // soundness: the recovery satisfies the exponent identity H(w*)·x = H(w)·x
    Scalar hw = hash_to_scalar(f.params.hash, std::string("invoice"));
    CHECK(*idx.entries[0].c1.transcript == hw * f.owner.x[0]);

    Dictionary miss = make_dict(20, {});
    AttackReport none = attack_index_kga(f.params, idx, f.owner_pub(), miss);
    CHECK(!none.success);
    CHECK(none.recoveries.empty());

    AttackReport empty = attack_index_kga(f.params, idx, f.owner_pub(), Dictionary(std::vector<std::string>{}));
    CHECK(!empty.success);
    CHECK(empty.candidates_tested == 0);
    CHECK(empty.pairings_evaluated == 1);  // only the cached left side
}

TEST_CASE("trapdoor KGA recovers the queried keyword") {
    Fixture f;
    Trapdoor td = trapdoor_gen(f.params, f.universe, {"salary"}, f.user, f.owner_pub(), f.owner.r);
    Dictionary dict = make_dict(50, {"salary"});

    AttackReport rep = attack_trapdoor_kga(f.params, td, f.user_pub(), dict);
    CHECK(rep.success);
    REQUIRE(rep.recoveries.size() == 1);
    CHECK(rep.recoveries[0].keyword == "salary");
    CHECK(rep.recoveries[0].position == 2);

    // the minimal attack: dictionary of one correct word costs exactly 2 pairings
    AttackReport tiny = attack_trapdoor_kga(f.params, td, f.user_pub(), Dictionary({"salary"}));
    CHECK(tiny.success);
    CHECK(tiny.pairings_evaluated == 2);

    AttackReport none =
        attack_trapdoor_kga(f.params, td, f.user_pub(), make_dict(10, {}));
    CHECK(!none.success);
}

TEST_CASE("shared r lets a user forge matching trapdoors without the owner") {
    Fixture f;
    EncryptedIndex idx = f.index_for("tax");

    AttackReport hit = demo_shared_r_forgery(f.params, f.universe, f.owner.r, f.owner_pub(),
                                             f.user, "tax", idx);
    CHECK(hit.success);
    CHECK(hit.details["search_matched"] == true);
    CHECK(hit.details["doc_ids"] == Json::array({"d1"}));
    CHECK(hit.details["c2_reconstructed"] == true);
    CHECK(hit.details["keyword_only_check"] == true);

    AttackReport wrong_kw = demo_shared_r_forgery(f.params, f.universe, f.owner.r, f.owner_pub(),
                                                  f.user, "invoice", idx);
    CHECK(!wrong_kw.success);

    DeterministicRandom other(7);
    Scalar bad_r = other.nonzero_scalar();
    AttackReport wrong_r =
        demo_shared_r_forgery(f.params, f.universe, bad_r, f.owner_pub(), f.user, "tax", idx);
    CHECK(!wrong_r.success);

    CHECK(oracle_audit().disagreements == 0);
}

TEST_CASE("search fails whenever index and trapdoor randomness disagree") {
    Fixture f;
    AttackReport rep =
        demo_mismatched_r_failure(f.params, f.universe, f.owner, f.user, "invoice", 10, f.rng);
    CHECK(rep.success);
    CHECK(rep.details["mismatched_r_matches"] == 0);
    CHECK(rep.details["shared_r_matches"] == 10);

    // oracle view of one failed trial: exponents differ exactly in the r slot
    EncryptedIndex idx = f.index_for("invoice");
    Scalar r_star = f.rng.nonzero_scalar();
    Trapdoor td = trapdoor_gen(f.params, f.universe, {"invoice"}, f.user, f.owner_pub(), r_star);
    Scalar lhs = *idx.entries[0].c1.transcript * *idx.entries[0].c2.transcript;
    Scalar rhs = *td.entries[0].t1.transcript * *td.entries[0].t2.transcript;
    CHECK(lhs != rhs);
    Scalar hw = hash_to_scalar(f.params.hash, std::string("invoice"));
    CHECK(lhs == hw * f.owner.x[0] * f.user.y[0] * f.owner.r);
    CHECK(rhs == hw * f.owner.x[0] * f.user.y[0] * r_star);
}

TEST_CASE("published document key decrypts every ciphertext") {
    Fixture f;
    std::vector<std::vector<std::uint8_t>> cts;
    std::vector<std::string> msgs = {"alpha", "bravo", "charlie"};
    for (const auto& m : msgs) {
        cts.push_back(encrypt_document(
            *f.params.doc_key,
            std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(m.data()), m.size()),
            f.rng));
    }

    AttackReport rep = attack_public_key_decrypt(f.params, cts);
    CHECK(rep.success);
    CHECK(rep.details["recovered"] == 3);
    for (std::size_t i = 0; i < msgs.size(); ++i) {
        std::span<const std::uint8_t> m(reinterpret_cast<const std::uint8_t*>(msgs[i].data()),
                                        msgs[i].size());
        CHECK(rep.details["documents"][i]["sha256"] == hex_encode(sha256(m)));
        CHECK(rep.details["documents"][i]["plaintext_hex"] == hex_encode(m));
    }

    auto tampered = cts;
    tampered[1].back() ^= 1;
    AttackReport partial = attack_public_key_decrypt(f.params, tampered);
    CHECK(!partial.success);
    CHECK(partial.details["documents"][1]["recovered"] == false);
    CHECK(partial.details["documents"][1].contains("error"));

    DeterministicRandom rng(9);
    PublicParams hard = setup(128, ParamsMode::hardened, rng);
    AttackReport blocked = attack_public_key_decrypt(hard, cts);
    CHECK(!blocked.success);
    CHECK(blocked.details["error"] == "no key in public parameters");
}

TEST_CASE("attacker role cannot load secret artifacts") {
    Fixture f;
    auto path = std::filesystem::temp_directory_path() / "kga-test-secret.json";
    store_envelope(path, make_envelope(SCHEMA_V1, "owner-key", true, f.owner.secret_json()));
    CHECK_THROWS_AS(load_envelope(path, "owner-key", Role::attacker), SchemaError);
    CHECK_NOTHROW(load_envelope(path, "owner-key", Role::trusted));
    std::filesystem::remove(path);
}

TEST_CASE("attack reports serialize deterministically without timing") {
    Fixture f;
    EncryptedIndex idx = f.index_for("invoice");
    Dictionary dict({"invoice", "other"});
    AttackReport a = attack_index_kga(f.params, idx, f.owner_pub(), dict);
    AttackReport b = attack_index_kga(f.params, idx, f.owner_pub(), dict);
    CHECK(a.to_json(false).dump() == b.to_json(false).dump());
    CHECK(a.to_json(true).contains("wall_time_s"));
    CHECK(!a.to_json(false).contains("wall_time_s"));
}
