#include <cmath>

#include "../oracles.hpp"
#include "helpers.hpp"
#include "nusample/classifiers.hpp"
#include "nusample/metrics.hpp"

using namespace nusample;

using Labels = std::vector<std::string>;

TEST_CASE("confusion matrix examples") {
    CHECK(confusion_matrix(Labels{"+", "+", "-"}, Labels{"+", "+", "-"}, "+") == ConfusionMatrix{2, 0, 0, 1});
    CHECK(confusion_matrix(Labels{"+", "-"}, Labels{"-", "+"}, "+") == ConfusionMatrix{0, 1, 1, 0});
    CHECK(confusion_matrix(Labels{"+", "+", "+", "-", "-"}, Labels{"+", "+", "-", "+", "-"}, "+") ==
          ConfusionMatrix{2, 1, 1, 1});
    CHECK_ERROR(confusion_matrix(Labels{"+"}, Labels{"+", "-"}, "+"), length_mismatch);
}

TEST_CASE("precision, recall, F1") {
    auto r = precision_recall_f1({5, 0, 0, 5});
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    CHECK(r.f1 == 1.0);
    CHECK(precision_recall_f1({0, 3, 0, 5}).f1 == 0.0);
    CHECK(precision_recall_f1({0, 0, 2, 5}).f1 == 0.0);
    CHECK(precision_recall_f1({0, 0, 0, 5}).precision == 0.0);
    r = precision_recall_f1({8, 4, 2, 6});
    CHECK(r.precision == doctest::Approx(0.8).epsilon(1e-4));
    CHECK(r.recall == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(r.f1 == doctest::Approx(0.7273).epsilon(1e-4));
}

TEST_CASE("g-mean") {
    CHECK(gmean({5, 0, 0, 5}) == 1.0);
    CHECK(gmean({0, 5, 1, 4}) == 0.0);
    CHECK(gmean({8, 2, 5, 5}) == doctest::Approx(0.6325).epsilon(1e-4));
    CHECK(gmean({0, 0, 0, 0}) == 0.0);
    CHECK(gmean({4, 1, 2, 9}, true) == 6.0);
}

TEST_CASE("auc examples and errors") {
    CHECK(auc(Labels{"+", "+", "-", "-"}, std::vector<double>{0.9, 0.8, 0.2, 0.1}, "+") == 1.0);
    CHECK(auc(Labels{"+", "-", "+", "-"}, std::vector<double>{0.5, 0.5, 0.5, 0.5}, "+") == 0.5);
    CHECK(auc(Labels{"+", "-", "+", "-"}, std::vector<double>{0.9, 0.8, 0.4, 0.3}, "+") == 0.75);
    CHECK_ERROR(auc(Labels{"+", "+"}, std::vector<double>{0.1, 0.2}, "+"), single_class);
    CHECK_ERROR(auc(Labels{"+", "-"}, std::vector<double>{0.1}, "+"), length_mismatch);
}

TEST_CASE("auc: oracle agreement and invariances") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(199);
        Labels y(n);
        std::vector<double> s(n), neg(n), lin(n), cube(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.below(3) == 0 ? "+" : "-";
            s[i] = trial % 2 ? double(rng.below(10)) / 10.0 - 0.5 : rng.uniform(-1, 1);
        }
        y[0] = "+";
        y[1] = "-";
        for (std::size_t i = 0; i < n; ++i) {
            neg[i] = -s[i];
            lin[i] = 2 * s[i] + 1;
            cube[i] = s[i] * s[i] * s[i];
        }
        const double a = auc(y, s, "+");
        CHECK(std::abs(a - oracle::pair_auc(y, s, "+")) <= 1e-12);
        CHECK(auc(y, lin, "+") == a);
        CHECK(auc(y, cube, "+") == a);
        CHECK((a >= 0.0 && a <= 1.0));
        if (trial % 2 == 0) CHECK(std::abs(a + auc(y, neg, "+") - 1.0) <= 1e-12);
    }
}

TEST_CASE("knn classifier") {
    const auto x = Matrix::from_rows({{0}, {1}, {2}, {10}, {11}, {12}, {13}});
    const Labels y{"n", "n", "n", "p", "p", "p", "p"};
    ClassifierConfig one;
    one.k = 1;
    const auto m1 = fit_classifier(ClassifierKind::knn, x, y, "p", one);
    CHECK(predict(m1, x) == y);

    const auto m5 = fit_classifier(ClassifierKind::knn, x, y, "p");
    CHECK(score(m5, Matrix::from_rows({{20}}))[0] == 0.8);
    const auto x2 = Matrix::from_rows({{0}, {1}, {2}, {3}, {4}, {5}, {6}});
    const Labels y2{"p", "p", "p", "p", "p", "n", "n"};
    CHECK(score(fit_classifier(ClassifierKind::knn, x2, y2, "p"), Matrix::from_rows({{-5}}))[0] == 1.0);
    const Labels y3{"p", "p", "n", "n", "n", "p", "p"};
    CHECK(score(fit_classifier(ClassifierKind::knn, x2, y3, "p"), Matrix::from_rows({{-5}}))[0] == 0.4);

    // clamp k to the training size; scores are multiples of 1/k
    ClassifierConfig big;
    big.k = 50;
    const auto mb = fit_classifier(ClassifierKind::knn, x, y, "p", big);
    CHECK(mb.k == 7);
    for (double v : score(mb, x)) CHECK(std::abs(v * 7 - std::round(v * 7)) < 1e-12);

    ClassifierConfig zero;
    zero.k = 0;
    CHECK_ERROR(fit_classifier(ClassifierKind::knn, x, y, "p", zero), config);
    CHECK_ERROR(fit_classifier(ClassifierKind::knn, x, Labels(7, "p"), "p"), single_class);
    CHECK_ERROR(score(m5, Matrix(1, 2)), shape);
}

TEST_CASE("linear classifiers") {
    const auto x = Matrix::from_rows({{-1}, {-1.2}, {-0.8}, {1}, {1.1}, {0.9}});
    const Labels y{"n", "n", "n", "p", "p", "p"};
    const auto lr = fit_classifier(ClassifierKind::logreg, x, y, "p");
    CHECK(lr.weights[0] > 0);
    CHECK(predict(lr, x) == y);
    const auto sg = fit_classifier(ClassifierKind::sgd_hinge, x, y, "p", {}, 3);
    CHECK(sg.weights[0] > 0);
    CHECK(predict(sg, x) == y);
    CHECK(fit_classifier(ClassifierKind::sgd_hinge, x, y, "p", {}, 3).weights == sg.weights);

    ClassifierModel flat;
    flat.kind = ClassifierKind::logreg;
    flat.weights = {0.0};
    for (double v : score(flat, x)) CHECK(v == 0.0);
    CHECK_ERROR(fit_classifier(ClassifierKind::logreg, x, Labels(6, "n"), "p"), single_class);
    CHECK_ERROR(score(lr, Matrix(2, 3)), shape);
}

TEST_CASE("logreg label-flip symmetry") {
    Rng rng(14);
    Matrix x(40, 3);
    Labels y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        for (std::size_t c = 0; c < 3; ++c) x(i, c) = rng.uniform();
        y[i] = x(i, 0) + 0.3 * rng.normal() > 0.5 ? "a" : "b";
    }
    const auto ma = fit_classifier(ClassifierKind::logreg, x, y, "a");
    const auto mb = fit_classifier(ClassifierKind::logreg, x, y, "b");
    const auto sa = score(ma, x), sb = score(mb, x);
    for (std::size_t i = 0; i < 40; ++i) CHECK(std::abs(sa[i] + sb[i]) <= 1e-6);
}
