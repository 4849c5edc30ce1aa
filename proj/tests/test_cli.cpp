// Exercises the installed binary end to end: exit-code contract, envelope
// hygiene, and the determinism guarantee of the demo command.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "kgalab/envelope.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(KGA_LAB_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}

// One shared fixture directory built once through the CLI itself.
struct CliFixture {
    fs::path dir;

    CliFixture() {
        dir = fs::temp_directory_path() / "kga-cli-fixture";
        fs::remove_all(dir);
        fs::create_directories(dir);
        write_file(dir / "universe.txt", "invoice\nsalary\ntax\naudit\n");
        write_file(dir / "dict.txt", "invoice\nsalary\ntax\naudit\nfoo\nbar\n");
        write_file(dir / "postings.json", R"([{"keyword":"tax","doc_ids":["d1"]}])");

        auto p = [&](const char* name) { return (dir / name).string(); };
        REQUIRE(run("setup --mode vulnerable --seed 7 --out " + p("params.json")).exit_code == 0);
        REQUIRE(run("keygen-owner --params " + p("params.json") + " --universe " +
                    p("universe.txt") + " --id do1 --seed 8 --sk-out " + p("owner.sk.json") +
                    " --pk-out " + p("owner.pk.json"))
                    .exit_code == 0);
        REQUIRE(run("keygen-user --params " + p("params.json") + " --q 4 --id u1 --seed 9 --sk-out " +
                    p("user.sk.json") + " --pk-out " + p("user.pk.json"))
                    .exit_code == 0);
        REQUIRE(run("index --params " + p("params.json") + " --universe " + p("universe.txt") +
                    " --postings " + p("postings.json") + " --owner-sk " + p("owner.sk.json") +
                    " --user-pk " + p("user.pk.json") + " --out " + p("index.json"))
                    .exit_code == 0);
        REQUIRE(run("trapdoor --params " + p("params.json") + " --universe " + p("universe.txt") +
                    " --query tax --user-sk " + p("user.sk.json") + " --owner-pk " +
                    p("owner.pk.json") + " --owner-sk " + p("owner.sk.json") + " --out " +
                    p("td-tax.json"))
                    .exit_code == 0);
        REQUIRE(run("trapdoor --params " + p("params.json") + " --universe " + p("universe.txt") +
                    " --query salary --user-sk " + p("user.sk.json") + " --owner-pk " +
                    p("owner.pk.json") + " --owner-sk " + p("owner.sk.json") + " --out " +
                    p("td-salary.json"))
                    .exit_code == 0);

        // hardened side
        REQUIRE(run("setup --mode hardened --seed 10 --out " + p("hparams.json") + " --msk-out " +
                    p("msk.json"))
                    .exit_code == 0);
        REQUIRE(run("keygen-owner --params " + p("hparams.json") + " --universe " +
                    p("universe.txt") + " --id do1 --seed 11 --sk-out " + p("howner.sk.json") +
                    " --pk-out " + p("howner.pk.json"))
                    .exit_code == 0);
        REQUIRE(run("enroll --msk " + p("msk.json") + " --params " + p("hparams.json") +
                    " --owner-sk " + p("howner.sk.json") + " --out " + p("cred.json"))
                    .exit_code == 0);
        REQUIRE(run("keygen-user --params " + p("hparams.json") + " --q 4 --id u1 --seed 12 --msk " +
                    p("msk.json") + " --sk-out " + p("huser.sk.json") + " --pk-out " +
                    p("huser.pk.json"))
                    .exit_code == 0);
        REQUIRE(run("index --params " + p("hparams.json") + " --universe " + p("universe.txt") +
                    " --postings " + p("postings.json") + " --owner-sk " + p("howner.sk.json") +
                    " --user-pk " + p("huser.pk.json") + " --msk " + p("msk.json") + " --out " +
                    p("hindex.json"))
                    .exit_code == 0);
    }

    std::string p(const char* name) const { return (dir / name).string(); }
};

CliFixture& fixture() {
    static CliFixture f;
    return f;
}

}  // namespace

TEST_CASE("search exit codes: 0 match, 1 no match, 2 schema error") {
    auto& f = fixture();
    RunResult hit = run("search --index " + f.p("index.json") + " --trapdoor " + f.p("td-tax.json"));
    CHECK(hit.exit_code == 0);
    kga::Json res = kga::Json::parse(hit.out);
    CHECK(res["overall"] == true);
    CHECK(res["doc_ids"] == kga::Json::array({"d1"}));

    CHECK(run("search --index " + f.p("index.json") + " --trapdoor " + f.p("td-salary.json"))
              .exit_code == 1);

    write_file(f.dir / "garbage.json", "{\"not\":\"an envelope\"}");
    CHECK(run("search --index " + f.p("garbage.json") + " --trapdoor " + f.p("td-tax.json"))
              .exit_code == 2);
    CHECK(run("search --index " + f.p("missing.json") + " --trapdoor " + f.p("td-tax.json"))
              .exit_code == 2);
}

TEST_CASE("attack i: exit 0 on the vulnerable fixture, 3 on the hardened one") {
    auto& f = fixture();
    RunResult vul = run("attack i --params " + f.p("params.json") + " --index " + f.p("index.json") +
                        " --owner-pk " + f.p("owner.pk.json") + " --dict " + f.p("dict.txt"));
    CHECK(vul.exit_code == 0);
    kga::Json rep = kga::Json::parse(vul.out);
    CHECK(rep["recoveries"][0]["keyword"] == "tax");

    RunResult hard = run("attack i --params " + f.p("hparams.json") + " --index " +
                         f.p("hindex.json") + " --owner-pk " + f.p("howner.pk.json") + " --dict " +
                         f.p("dict.txt"));
    CHECK(hard.exit_code == 3);
    CHECK(kga::Json::parse(hard.out)["recoveries"].empty());
}

TEST_CASE("attack commands refuse secret inputs") {
    auto& f = fixture();
    // handing the attacker a secret key file must be rejected as a schema error
    CHECK(run("attack i --params " + f.p("params.json") + " --index " + f.p("index.json") +
              " --owner-pk " + f.p("owner.sk.json") + " --dict " + f.p("dict.txt"))
              .exit_code == 2);
}

TEST_CASE("key files carry the declared secrecy flags") {
    auto& f = fixture();
    CHECK(kga::load_envelope_any(f.p("owner.sk.json"), kga::Role::trusted)["secret"] == true);
    CHECK(kga::load_envelope_any(f.p("owner.pk.json"), kga::Role::trusted)["secret"] == false);
    CHECK(kga::load_envelope_any(f.p("cred.json"), kga::Role::trusted)["secret"] == true);
    CHECK(kga::load_envelope_any(f.p("hindex.json"), kga::Role::trusted)["schema"] ==
          kga::SCHEMA_V1_HARDENED);
}

TEST_CASE("demo output is byte-identical for equal seeds and differs across seeds") {
    RunResult a = run("demo --mode vulnerable --seed 1");
    RunResult b = run("demo --mode vulnerable --seed 1");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    RunResult c = run("demo --mode vulnerable --seed 2");
    CHECK(c.exit_code == 0);
    CHECK(a.out != c.out);

    kga::Json rep = kga::Json::parse(a.out);
    CHECK(rep["all_expected"] == true);
    CHECK(rep["modes"][0]["matrix"]["attack_I_succeeds"] == true);
}

TEST_CASE("hardened demo matrix shows the attacks resisted") {
    RunResult r = run("demo --mode hardened --seed 1");
    CHECK(r.exit_code == 0);
    kga::Json rep = kga::Json::parse(r.out);
    auto matrix = rep["modes"][0]["matrix"];
    CHECK(matrix["attack_I_resisted"] == true);
    CHECK(matrix["attack_II_resisted"] == true);
    CHECK(matrix["attack_IV_resisted"] == true);
    CHECK(matrix["correctness"] == true);
}

TEST_CASE("deterministic seeds make artifact generation reproducible") {
    auto& f = fixture();
    auto out1 = f.dir / "repro1.json";
    auto out2 = f.dir / "repro2.json";
    for (const auto& out : {out1, out2})
        REQUIRE(run("setup --mode vulnerable --seed 99 --out " + out.string()).exit_code == 0);
    std::ifstream a(out1), b(out2);
    std::string sa((std::istreambuf_iterator<char>(a)), {});
    std::string sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
}
