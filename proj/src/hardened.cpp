#include "kgalab/hardened.hpp"

#include <algorithm>

namespace kga {

namespace {

Json elements_json(const std::vector<GroupElement>& es) {
    Json arr = Json::array();
    for (const auto& e : es) arr.push_back(element_json(e));
    return arr;
}

std::vector<GroupElement> elements_from_json(const Json& arr) {
    std::vector<GroupElement> out;
    for (const auto& j : arr) out.push_back(element_from_json(j));
    return out;
}

}  // namespace

Json MasterSecret::secret_json() const {
    Json body;
    body["alpha"] = scalar_json(alpha);
    Json owners = Json::object();
    for (const auto& [id, r] : owner_r) owners[id] = scalar_json(r);
    body["owner_r"] = owners;
    return body;
}

MasterSecret MasterSecret::from_secret_json(const Json& body) {
    MasterSecret msk;
    msk.alpha = scalar_from_json(body.at("alpha"));
    for (const auto& [id, r] : body.at("owner_r").items()) msk.owner_r[id] = scalar_from_json(r);
    return msk;
}

Json HardenedUserKey::secret_json() const {
    Json body;
    body["id"] = id;
    body["q"] = y_blinded.size();
    Json ys = Json::array();
    for (const auto& s : y_blinded) ys.push_back(scalar_json(s));
    body["y_blinded"] = ys;
    body["pk"] = elements_json(pk);
    return body;
}

Json HardenedUserKey::public_json() const {
    return Json{{"id", id}, {"pk", elements_json(pk)}};
}

HardenedUserKey HardenedUserKey::from_secret_json(const Json& body, const PublicParams& params) {
    HardenedUserKey u;
    u.id = body.at("id").get<std::string>();
    for (const auto& j : body.at("y_blinded")) u.y_blinded.push_back(scalar_from_json(j));
    u.pk = elements_from_json(body.at("pk"));
    if (u.pk.size() != u.y_blinded.size()) throw SchemaError("hardened user key: size mismatch");
    (void)params;
    return u;
}

Json OwnerSearchCredential::to_json() const {
    return Json{{"owner_id", owner_id}, {"v", elements_json(v)}};
}

OwnerSearchCredential OwnerSearchCredential::from_json(const Json& body, const PublicParams& params) {
    OwnerSearchCredential c;
    c.owner_id = body.at("owner_id").get<std::string>();
    c.v = elements_from_json(body.at("v"));
    (void)params;
    return c;
}

std::pair<PublicParams, MasterSecret> h_setup(int security_level, RandomSource& rng,
                                              bool transcripts) {
    PublicParams params = setup(security_level, ParamsMode::hardened, rng, transcripts);
    MasterSecret msk;
    msk.alpha = rng.nonzero_scalar();
    return {params, msk};
}

void h_register_owner(MasterSecret& msk, const OwnerKeyMaterial& owner) {
    msk.owner_r[owner.id] = owner.r;
}

HardenedUserKey h_keygen_user(const MasterSecret& msk, const PublicParams& params, std::size_t q,
                              RandomSource& rng, const std::string& id) {
    if (q == 0) throw Error("h_keygen_user: q must be at least 1");
    HardenedUserKey u;
    u.id = id;
    GroupElement g = params.generator();
    for (std::size_t l = 0; l < q; ++l) {
        // y_l exists only inside this scope; the user receives the product.
        Scalar y = rng.nonzero_scalar();
        u.y_blinded.push_back(y * msk.alpha);
        u.pk.push_back(exp(g, y));
    }
    return u;
}

OwnerSearchCredential h_enroll_owner(const MasterSecret& msk, const PublicParams& params,
                                     const OwnerPublicKey& owner_pub) {
    auto it = msk.owner_r.find(owner_pub.id);
    if (it == msk.owner_r.end()) throw Error("h_enroll_owner: owner not registered: " + owner_pub.id);
    (void)params;
    OwnerSearchCredential cred;
    cred.owner_id = owner_pub.id;
    for (const auto& pk : owner_pub.pk) cred.v.push_back(exp(pk, it->second));
    return cred;
}

EncryptedIndex h_index_gen(const PublicParams& params, const KeywordUniverse& universe,
                           const std::vector<KeywordPosting>& postings,
                           const OwnerKeyMaterial& owner, const UserPublicKey& user_pub,
                           const Scalar& alpha) {
    if (alpha.is_zero()) throw DegenerateInputError("h_index_gen: alpha must be nonzero");
    EncryptedIndex idx;
    idx.owner_id = owner.id;
    idx.user_id = user_pub.id;
    idx.schema = SCHEMA_V1_HARDENED;
    GroupElement g = params.generator();
    for (const auto& posting : postings) {
        std::size_t h = universe.position_of(posting.keyword);
        if (h > owner.x.size()) throw Error("h_index_gen: owner key does not cover position");
        if (h > user_pub.pk.size()) throw Error("h_index_gen: user public key does not cover position");
        Scalar hw = hash_to_scalar(params.hash, posting.keyword);
        if (hw.is_zero()) throw DegenerateInputError("h_index_gen: H(w) = 0");
        IndexEntry e;
        e.position = h;
        e.c1 = exp(g, hw * owner.x[h - 1] * alpha);  // g^{H(w) x_h alpha}
        e.c2 = exp(user_pub.pk[h - 1], owner.r);     // g^{y_h r_i}
        e.doc_ids = posting.doc_ids;
        std::sort(e.doc_ids.begin(), e.doc_ids.end());
        e.doc_ids.erase(std::unique(e.doc_ids.begin(), e.doc_ids.end()), e.doc_ids.end());
        idx.entries.push_back(std::move(e));
    }
    std::sort(idx.entries.begin(), idx.entries.end(),
              [](const IndexEntry& a, const IndexEntry& b) { return a.position < b.position; });
    return idx;
}

Trapdoor h_trapdoor_gen(const PublicParams& params, const KeywordUniverse& universe,
                        const std::vector<std::string>& query, const HardenedUserKey& user,
                        const OwnerSearchCredential& credential) {
    Trapdoor td;
    td.user_id = user.id;
    td.owner_id = credential.owner_id;
    td.schema = SCHEMA_V1_HARDENED;
    GroupElement g = params.generator();
    for (const auto& w : query) {
        std::size_t h = universe.position_of(w);
        if (h > user.y_blinded.size()) throw Error("h_trapdoor_gen: user key does not cover position");
        if (h > credential.v.size()) throw Error("h_trapdoor_gen: credential does not cover position");
        Scalar hw = hash_to_scalar(params.hash, w);
        if (hw.is_zero()) throw DegenerateInputError("h_trapdoor_gen: H(w) = 0");
        TrapdoorEntry e;
        e.position = h;
        e.t1 = exp(g, hw * user.y_blinded[h - 1]);  // g^{H(w') y alpha}
        e.t2 = credential.v[h - 1];                 // g^{x r_i}, delivered without r_i
        td.entries.push_back(std::move(e));
    }
    std::sort(td.entries.begin(), td.entries.end(),
              [](const TrapdoorEntry& a, const TrapdoorEntry& b) { return a.position < b.position; });
    return td;
}

MatchResult h_search(const EncryptedIndex& index, const Trapdoor& trapdoor) {
    if (index.schema != SCHEMA_V1_HARDENED || trapdoor.schema != SCHEMA_V1_HARDENED)
        throw SchemaError("h_search: both artifacts must use the hardened schema");
    return search(index, trapdoor);
}

}  // namespace kga
