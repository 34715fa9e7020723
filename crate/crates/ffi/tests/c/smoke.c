#include <stdio.h>
#include <string.h>
#include "deloop.h"

static int fail(const char *what) {
    const char *msg = dl_last_error();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    DlAlgebra *k = NULL;
    if (dl_algebra_from_label("k", &k) != DL_STATUS_OK) return fail("label");

    char *report = NULL;
    if (dl_cyclic_homology(k, 3, 100000, &report) != DL_STATUS_OK) return fail("hc");
    printf("%s\n", report);
    dl_string_free(report);

    DlOperator *t = NULL, *ti = NULL;
    if (dl_operator_shift(k, 2, &t) != DL_STATUS_OK) return fail("shift");
    if (dl_operator_shift(k, -2, &ti) != DL_STATUS_OK) return fail("shift");
    char *c = NULL;
    if (dl_cocycle(t, ti, &c) != DL_STATUS_OK) return fail("cocycle");
    printf("%s\n", c);
    dl_string_free(c);

    if (dl_algebra_from_label("bogus", &k) != DL_STATUS_INVALID_INPUT) return fail("expected invalid input");
    printf("%s\n", dl_last_error());

    dl_operator_free(t);
    dl_operator_free(ti);
    dl_algebra_free(k);
    return 0;
}
