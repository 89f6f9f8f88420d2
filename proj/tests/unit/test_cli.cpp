#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "nusample/dataset.hpp"

namespace {

std::string tmp(const std::string& name) { return std::string(NUSAMPLE_TEST_TMP) + "/cli_" + name; }

int run(const std::string& args) {
    const std::string cmd = std::string(NUSAMPLE_CLI) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

}  // namespace

TEST_CASE("cli generate and resample") {
    const auto a = tmp("a.csv");
    REQUIRE(run("generate --centers \"0,0;2,2\" --stds 1.5,0.5 --counts 200,20 --seed 3 --out " + a) == 0);
    const auto d = nusample::load_csv(a, std::string("y"));
    CHECK(d.size() == 220);
    CHECK(d.feature_names == std::vector<std::string>{"x1", "x2"});

    const auto out = tmp("bal.csv"), sc = tmp("sc.csv");
    CHECK(run("resample --in " + a + " --label y --method nus1 --seed 1 --out " + out + " --scatter " + sc) == 0);
    CHECK(nusample::load_csv(out, std::string("y")).size() == 40);

    // cluster centroids come back in input units, inside the majority's bounding box
    CHECK(run("resample --in " + a + " --label 2 --method cc --seed 1 --out " + out) == 0);
    const auto cc = nusample::load_csv(out, std::string("y"));
    CHECK(cc.size() == 40);
    double lo = 1e300, hi = -1e300;
    for (std::size_t r = 0; r < 200; ++r) {
        lo = std::min(lo, d.features(r, 0));
        hi = std::max(hi, d.features(r, 0));
    }
    for (std::size_t r = 0; r < cc.size(); ++r)
        if (cc.labels[r] == "maj") CHECK((cc.features(r, 0) >= lo && cc.features(r, 0) <= hi));
}

TEST_CASE("cli exit codes") {
    const auto a = tmp("b.csv");
    REQUIRE(run("generate --centers \"0,0;2,2\" --stds 1,1 --counts 50,10 --out " + a) == 0);
    CHECK(run("resample --in " + a + " --method smote --out " + tmp("x.csv")) == 2);
    CHECK(run("resample --in /nonexistent.csv --method rus --out " + tmp("x.csv")) == 2);
    CHECK(run("generate --centers \"0,0;2,2\" --stds -1,1 --counts 5,5 --out " + tmp("x.csv")) == 2);
    CHECK(run("bogus") == 2);
    CHECK(run("") == 2);

    const auto three = tmp("three.csv");
    write(three, "f,y\n1,a\n2,b\n3,c\n4,a\n");
    CHECK(run("resample --in " + three + " --method rus --out " + tmp("x.csv")) == 3);
    const auto missing = tmp("missing.csv");
    write(missing, "f,y\n1,a\n,b\n3,a\n");
    CHECK(run("resample --in " + missing + " --method rus --out " + tmp("x.csv")) == 2);
    const auto small = tmp("small.csv");
    write(small, "f,y\n1,a\n2,b\n3,a\n4,a\n5,a\n6,a\n");
    CHECK(run("evaluate --in " + small + " --methods none --report " + tmp("r.json")) == 3);
}

TEST_CASE("cli evaluate is byte-reproducible") {
    const auto a = tmp("c.csv");
    REQUIRE(run("generate --centers \"0,0;1,1\" --stds 1,0.5 --counts 120,30 --seed 9 --out " + a) == 0);
    const std::string args = "evaluate --in " + a +
                             " --methods nus2,enn,cc --classifiers knn,logreg,sgd --metrics auc,gmean,f1 --folds 3"
                             " --repeats 2 --seed 4 --report ";
    REQUIRE(run(args + tmp("r1.json")) == 0);
    REQUIRE(run(args + tmp("r2.json")) == 0);
    const auto r1 = slurp(tmp("r1.json"));
    CHECK(!r1.empty());
    CHECK(r1 == slurp(tmp("r2.json")));
}
