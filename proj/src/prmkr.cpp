#include "kgalab/prmkr.hpp"

#include <algorithm>
#include <set>

#include <sodium.h>

#include "kgalab/hexutil.hpp"

namespace kga {

namespace {

std::vector<Json> elements_json(const std::vector<GroupElement>& es) {
    std::vector<Json> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(element_json(e));
    return out;
}

std::vector<GroupElement> elements_from_json(const Json& arr) {
    std::vector<GroupElement> out;
    for (const auto& j : arr) out.push_back(element_from_json(j));
    return out;
}

std::vector<Json> scalars_json(const std::vector<Scalar>& ss) {
    std::vector<Json> out;
    out.reserve(ss.size());
    for (const auto& s : ss) out.push_back(scalar_json(s));
    return out;
}

std::vector<Scalar> scalars_from_json(const Json& arr) {
    std::vector<Scalar> out;
    for (const auto& j : arr) out.push_back(scalar_from_json(j));
    return out;
}

}  // namespace

Json PublicParams::to_json() const {
    Json body;
    body["curve"] = curve_id;
    body["order_hex"] = Scalar::zero().to_hex();  // placeholder replaced below
    // group order r, big-endian hex
    {
        mpz_t r;
        mpz_init(r);
        Fr::modulus_mpz(r);
        char* s = mpz_get_str(nullptr, 16, r);
        body["order_hex"] = std::string(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, std::strlen(s) + 1);
        mpz_clear(r);
    }
    body["hash"] = Json{{"algorithm", hash.algorithm}, {"tag", hash.tag}};
    body["mode"] = mode == ParamsMode::vulnerable ? "vulnerable" : "hardened";
    if (mode == ParamsMode::vulnerable) {
        if (!doc_key) throw Error("vulnerable params missing doc_key");
        body["doc_key"] = hex_encode(*doc_key);
    }
    return body;
}

PublicParams PublicParams::from_json(const Json& body) {
    PublicParams p;
    p.curve_id = body.at("curve").get<std::string>();
    if (p.curve_id != "bls12-381") throw SchemaError("unsupported curve " + p.curve_id);
    p.hash.algorithm = body.at("hash").at("algorithm").get<std::string>();
    p.hash.tag = body.at("hash").at("tag").get<std::string>();
    std::string mode = body.at("mode").get<std::string>();
    if (mode == "vulnerable") {
        p.mode = ParamsMode::vulnerable;
        auto key = hex_decode(body.at("doc_key").get<std::string>());
        if (key.size() != 32) throw SchemaError("doc_key must be 32 bytes");
        std::array<std::uint8_t, 32> k{};
        std::copy(key.begin(), key.end(), k.begin());
        p.doc_key = k;
    } else if (mode == "hardened") {
        p.mode = ParamsMode::hardened;
        if (body.contains("doc_key")) throw SchemaError("hardened params must not carry doc_key");
    } else {
        throw SchemaError("unknown params mode " + mode);
    }
    return p;
}

KeywordUniverse::KeywordUniverse(std::vector<std::string> words) : words_(std::move(words)) {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (!index_.emplace(words_[i], i + 1).second)
            throw Error("keyword universe: duplicate keyword " + words_[i]);
    }
}

std::size_t KeywordUniverse::position_of(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) throw Error("keyword not in universe: " + word);
    return it->second;
}

const std::string& KeywordUniverse::word_at(std::size_t pos) const {
    if (pos == 0 || pos > words_.size()) throw Error("keyword position out of range");
    return words_[pos - 1];
}

Json KeywordUniverse::to_json() const {
    return Json{{"keywords", words_}};
}

KeywordUniverse KeywordUniverse::from_json(const Json& body) {
    return KeywordUniverse(body.at("keywords").get<std::vector<std::string>>());
}

Json OwnerKeyMaterial::secret_json() const {
    Json body;
    body["id"] = id;
    body["u"] = x.size();
    body["x"] = scalars_json(x);
    body["r"] = scalar_json(r);
    body["pk"] = elements_json(pk);
    return body;
}

Json OwnerKeyMaterial::public_json() const {
    return Json{{"id", id}, {"pk", elements_json(pk)}};
}

OwnerKeyMaterial OwnerKeyMaterial::from_secret_json(const Json& body, const PublicParams& params) {
    OwnerKeyMaterial o;
    o.id = body.at("id").get<std::string>();
    o.x = scalars_from_json(body.at("x"));
    o.r = scalar_from_json(body.at("r"));
    o.pk = elements_from_json(body.at("pk"));
    if (o.pk.size() != o.x.size()) throw SchemaError("owner key: pk/x size mismatch");
    if (params.transcripts)
        for (std::size_t t = 0; t < o.x.size(); ++t) o.pk[t].transcript = o.x[t];
    return o;
}

Json UserKeyMaterial::secret_json() const {
    Json body;
    body["id"] = id;
    body["q"] = y.size();
    body["y"] = scalars_json(y);
    body["pk"] = elements_json(pk);
    return body;
}

Json UserKeyMaterial::public_json() const {
    return Json{{"id", id}, {"pk", elements_json(pk)}};
}

UserKeyMaterial UserKeyMaterial::from_secret_json(const Json& body, const PublicParams& params) {
    UserKeyMaterial u;
    u.id = body.at("id").get<std::string>();
    u.y = scalars_from_json(body.at("y"));
    u.pk = elements_from_json(body.at("pk"));
    if (u.pk.size() != u.y.size()) throw SchemaError("user key: pk/y size mismatch");
    if (params.transcripts)
        for (std::size_t l = 0; l < u.y.size(); ++l) u.pk[l].transcript = u.y[l];
    return u;
}

OwnerPublicKey OwnerPublicKey::from_json(const Json& body) {
    return OwnerPublicKey{body.at("id").get<std::string>(), elements_from_json(body.at("pk"))};
}

UserPublicKey UserPublicKey::from_json(const Json& body) {
    return UserPublicKey{body.at("id").get<std::string>(), elements_from_json(body.at("pk"))};
}

const IndexEntry* EncryptedIndex::find(std::size_t position) const {
    for (const auto& e : entries)
        if (e.position == position) return &e;
    return nullptr;
}

Json EncryptedIndex::to_json() const {
    Json body;
    body["owner_id"] = owner_id;
    body["user_id"] = user_id;
    std::vector<Json> es;
    for (const auto& e : entries) {
        es.push_back(Json{{"position", e.position},
                          {"c1", element_json(e.c1)},
                          {"c2", element_json(e.c2)},
                          {"doc_ids", e.doc_ids}});
    }
    body["entries"] = es;
    return body;
}

EncryptedIndex EncryptedIndex::from_json(const Json& body) {
    EncryptedIndex idx;
    idx.owner_id = body.at("owner_id").get<std::string>();
    idx.user_id = body.at("user_id").get<std::string>();
    for (const auto& j : body.at("entries")) {
        IndexEntry e;
        e.position = j.at("position").get<std::size_t>();
        e.c1 = element_from_json(j.at("c1"));
        e.c2 = element_from_json(j.at("c2"));
        e.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
        idx.entries.push_back(std::move(e));
    }
    return idx;
}

Json Trapdoor::to_json() const {
    Json body;
    body["user_id"] = user_id;
    body["owner_id"] = owner_id;
    std::vector<Json> es;
    for (const auto& e : entries)
        es.push_back(Json{{"position", e.position}, {"t1", element_json(e.t1)}, {"t2", element_json(e.t2)}});
    body["entries"] = es;
    return body;
}

Trapdoor Trapdoor::from_json(const Json& body) {
    Trapdoor t;
    t.user_id = body.at("user_id").get<std::string>();
    t.owner_id = body.at("owner_id").get<std::string>();
    for (const auto& j : body.at("entries")) {
        TrapdoorEntry e;
        e.position = j.at("position").get<std::size_t>();
        e.t1 = element_from_json(j.at("t1"));
        e.t2 = element_from_json(j.at("t2"));
        t.entries.push_back(std::move(e));
    }
    return t;
}

Json MatchResult::to_json() const {
    Json body;
    std::vector<Json> per;
    for (const auto& p : per_position) per.push_back(Json{{"position", p.position}, {"matched", p.matched}});
    body["per_position"] = per;
    body["overall"] = overall;
    body["doc_ids"] = doc_ids;
    return body;
}

PublicParams setup(int security_level, ParamsMode mode, RandomSource& rng, bool transcripts) {
    if (security_level != 128) throw Error("only the 128-bit security level is provided");
    PublicParams p;
    p.mode = mode;
    p.transcripts = transcripts;
    if (mode == ParamsMode::vulnerable) {
        std::array<std::uint8_t, 32> k;
        rng.fill(k);
        p.doc_key = k;  // deliberately public: this is the flaw under study
    }
    return p;
}

OwnerKeyMaterial keygen_owner(const PublicParams& params, const KeywordUniverse& universe,
                              RandomSource& rng, const std::string& id) {
    if (universe.size() == 0) throw Error("keygen_owner: empty keyword universe");
    OwnerKeyMaterial o;
    o.id = id;
    GroupElement g = params.generator();
    for (std::size_t t = 0; t < universe.size(); ++t) {
        Scalar x = rng.nonzero_scalar();
        o.x.push_back(x);
        o.pk.push_back(exp(g, x));
    }
    o.r = rng.nonzero_scalar();
    return o;
}

UserKeyMaterial keygen_user(const PublicParams& params, std::size_t q, RandomSource& rng,
                            const std::string& id) {
    if (q == 0) throw Error("keygen_user: q must be at least 1");
    UserKeyMaterial u;
    u.id = id;
    GroupElement g = params.generator();
    for (std::size_t l = 0; l < q; ++l) {
        Scalar y = rng.nonzero_scalar();
        u.y.push_back(y);
        u.pk.push_back(exp(g, y));
    }
    return u;
}

EncryptedIndex index_gen(const PublicParams& params, const KeywordUniverse& universe,
                         const std::vector<KeywordPosting>& postings, const OwnerKeyMaterial& owner,
                         const UserPublicKey& user_pub, RPolicy r_policy, RandomSource& rng) {
    Scalar r = r_policy == RPolicy::owner_shared ? owner.r : rng.nonzero_scalar();
    if (r.is_zero()) throw DegenerateInputError("index_gen: r must be nonzero");

    EncryptedIndex idx;
    idx.owner_id = owner.id;
    idx.user_id = user_pub.id;
    GroupElement g = params.generator();
    for (const auto& posting : postings) {
        std::size_t h = universe.position_of(posting.keyword);
        if (h > owner.x.size()) throw Error("index_gen: owner key does not cover position");
        if (h > user_pub.pk.size()) throw Error("index_gen: user public key does not cover position");
        Scalar hw = hash_to_scalar(params.hash, posting.keyword);
        if (hw.is_zero()) throw DegenerateInputError("index_gen: H(w) = 0");
        IndexEntry e;
        e.position = h;
        e.c1 = exp(g, hw * owner.x[h - 1]);          // g^{H(w) x_h}
        e.c2 = exp(user_pub.pk[h - 1], r);           // PK_{U,h}^{r} = g^{y_h r}
        e.doc_ids = posting.doc_ids;
        std::sort(e.doc_ids.begin(), e.doc_ids.end());
        e.doc_ids.erase(std::unique(e.doc_ids.begin(), e.doc_ids.end()), e.doc_ids.end());
        idx.entries.push_back(std::move(e));
    }
    std::sort(idx.entries.begin(), idx.entries.end(),
              [](const IndexEntry& a, const IndexEntry& b) { return a.position < b.position; });
    return idx;
}

Trapdoor trapdoor_gen(const PublicParams& params, const KeywordUniverse& universe,
                      const std::vector<std::string>& query, const UserKeyMaterial& user,
                      const OwnerPublicKey& owner_pub, const Scalar& r) {
    if (r.is_zero()) throw DegenerateInputError("trapdoor_gen: r must be nonzero");
    Trapdoor td;
    td.user_id = user.id;
    td.owner_id = owner_pub.id;
    GroupElement g = params.generator();
    for (const auto& w : query) {
        std::size_t h = universe.position_of(w);
        if (h > user.y.size()) throw Error("trapdoor_gen: user key does not cover position");
        if (h > owner_pub.pk.size()) throw Error("trapdoor_gen: owner public key does not cover position");
        Scalar hw = hash_to_scalar(params.hash, w);
        if (hw.is_zero()) throw DegenerateInputError("trapdoor_gen: H(w) = 0");
        TrapdoorEntry e;
        e.position = h;
        e.t1 = exp(g, hw * user.y[h - 1]);        // g^{H(w') y_h'}
        e.t2 = exp(owner_pub.pk[h - 1], r);       // PK_{DO,h'}^{r} = g^{x_h' r}
        td.entries.push_back(std::move(e));
    }
    std::sort(td.entries.begin(), td.entries.end(),
              [](const TrapdoorEntry& a, const TrapdoorEntry& b) { return a.position < b.position; });
    return td;
}

namespace {

MatchResult search_impl(const EncryptedIndex& index, const Trapdoor& trapdoor, bool ratio_form) {
    if (index.owner_id != trapdoor.owner_id || index.user_id != trapdoor.user_id)
        throw Error("search: index and trapdoor reference different owner/user pair");
    if (trapdoor.entries.empty()) throw Error("search: empty trapdoor");

    MatchResult result;
    result.overall = true;
    std::vector<const IndexEntry*> matched_entries;
    for (const auto& te : trapdoor.entries) {
        const IndexEntry* ie = index.find(te.position);
        bool matched = false;
        if (ie) {
            TargetElement lhs = pair(ie->c1, ie->c2);
            TargetElement rhs = pair(te.t1, te.t2);
            if (ratio_form)
                matched = target_equal(lhs * rhs.inverse(), TargetElement::identity(lhs.transcript && rhs.transcript));
            else
                matched = target_equal(lhs, rhs);
        }
        result.per_position.push_back({te.position, matched});
        result.overall = result.overall && matched;
        if (matched && ie) matched_entries.push_back(ie);
    }

    if (result.overall) {
        // conjunctive semantics: intersect postings of all matched positions
        std::set<std::string> acc(matched_entries.front()->doc_ids.begin(),
                                  matched_entries.front()->doc_ids.end());
        for (std::size_t i = 1; i < matched_entries.size(); ++i) {
            std::set<std::string> next(matched_entries[i]->doc_ids.begin(), matched_entries[i]->doc_ids.end());
            std::set<std::string> inter;
            std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(),
                                  std::inserter(inter, inter.begin()));
            acc.swap(inter);
        }
        result.doc_ids.assign(acc.begin(), acc.end());
    }
    return result;
}

}  // namespace

MatchResult search(const EncryptedIndex& index, const Trapdoor& trapdoor) {
    return search_impl(index, trapdoor, false);
}

MatchResult search_ratio(const EncryptedIndex& index, const Trapdoor& trapdoor) {
    return search_impl(index, trapdoor, true);
}

std::vector<std::uint8_t> encrypt_document(const std::array<std::uint8_t, 32>& key,
                                           std::span<const std::uint8_t> plaintext, RandomSource& rng) {
    if (sodium_init() < 0) throw Error("libsodium initialization failed");
    std::vector<std::uint8_t> out(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES);
    rng.fill(out);
    out.resize(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES + plaintext.size() +
               crypto_aead_xchacha20poly1305_ietf_ABYTES);
    unsigned long long clen = 0;
    crypto_aead_xchacha20poly1305_ietf_encrypt(
        out.data() + crypto_aead_xchacha20poly1305_ietf_NPUBBYTES, &clen, plaintext.data(),
        plaintext.size(), nullptr, 0, nullptr, out.data(), key.data());
    out.resize(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES + clen);
    return out;
}

std::vector<std::uint8_t> decrypt_document(const std::array<std::uint8_t, 32>& key,
                                           std::span<const std::uint8_t> ciphertext) {
    if (sodium_init() < 0) throw Error("libsodium initialization failed");
    constexpr std::size_t NPUB = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
    constexpr std::size_t TAG = crypto_aead_xchacha20poly1305_ietf_ABYTES;
    if (ciphertext.size() < NPUB + TAG) throw Error("decrypt_document: ciphertext too short");
    std::vector<std::uint8_t> out(ciphertext.size() - NPUB - TAG);
    unsigned long long mlen = 0;
    if (crypto_aead_xchacha20poly1305_ietf_decrypt(out.data(), &mlen, nullptr,
                                                   ciphertext.data() + NPUB, ciphertext.size() - NPUB,
                                                   nullptr, 0, ciphertext.data(), key.data()) != 0)
        throw Error("decrypt_document: authentication failed");
    out.resize(mlen);
    return out;
}

}  // namespace kga
