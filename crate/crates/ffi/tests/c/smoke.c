#include <stdio.h>
#include <string.h>

#include "lcplab.h"

#define CHECK(call)                                                          \
    do {                                                                     \
        LcplabStatus st_ = (call);                                           \
        if (st_ != LCPLAB_STATUS_OK) {                                       \
            fprintf(stderr, "%s -> %d: %s\n", #call, st_, lcplab_last_error()); \
            return 1;                                                        \
        }                                                                    \
    } while (0)

#define CERTIFICATE                                       \
    "{\"X\": [[1,-2,0],[0,1,0],[-1,-2,1]],"                  \
    " \"Y\": [[1,0,0],[0,1,0],[-2,0,1]], \"r\": [3,8,0], \"s\": [0,0,1]}"

static const char *INSTANCE =
    "{\"A\": [[1,2,0],[0,1,0],[-1,0,1]], \"q\": [-1,-1,-1], \"certificate\": " CERTIFICATE "}";

int main(void) {
    LcplabMatrix *m = NULL;
    LcplabInstance *inst = NULL;
    LcplabCertificate *cert = NULL;
    char *out = NULL;

    CHECK(lcplab_matrix_from_json(INSTANCE, &m));
    CHECK(lcplab_matrix_det(m, &out));
    printf("det %s\n", out);
    lcplab_string_free(out);

    CHECK(lcplab_certificate_from_json(CERTIFICATE, &cert));
    CHECK(lcplab_certificate_verify(m, cert, &out));
    printf("verify %s\n", out);
    lcplab_string_free(out);
    CHECK(lcplab_classify(m, cert, NULL, NULL, &out));
    printf("classify %s\n", out);
    lcplab_string_free(out);

    CHECK(lcplab_instance_from_json(INSTANCE, &inst));
    CHECK(lcplab_solve(inst, "lp", &out));
    printf("solve %s\n", out);
    lcplab_string_free(out);

    if (lcplab_matrix_from_json("{\"rows\": [[1, 2], [3]]}", &m) != LCPLAB_STATUS_INVALID_INPUT) {
        return 1;
    }
    printf("error %s\n", lcplab_last_error());

    lcplab_instance_free(inst);
    lcplab_certificate_free(cert);
    lcplab_matrix_free(m);
    return 0;
}
