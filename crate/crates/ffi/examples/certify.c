/* Certifies the 2x2 pair for p/q = 5/2 through the C interface. */
#include <stdio.h>

#include "shannon_lattice.h"

int main(void) {
    const int64_t a_entries[] = {2, 1, -1, 2};
    const int64_t b_entries[] = {2, -1, 1, 2};
    SlMatrix *a = NULL, *b = NULL;
    SlCertificate *cert = NULL;
    char *det = NULL;
    int code = 1;

    if (sl_matrix_from_i64(2, a_entries, &a) != SL_STATUS_OK ||
        sl_matrix_from_i64(2, b_entries, &b) != SL_STATUS_OK) {
        fprintf(stderr, "matrix: %s\n", sl_last_error());
        goto done;
    }
    if (sl_matrix_det(b, &det) != SL_STATUS_OK) {
        fprintf(stderr, "det: %s\n", sl_last_error());
        goto done;
    }
    if (sl_certify(a, b, "5", "2", &cert) != SL_STATUS_OK) {
        fprintf(stderr, "certify: %s\n", sl_last_error());
        goto done;
    }
    printf("det=%s valid=%d\n", det, sl_certificate_is_valid(cert) ? 1 : 0);
    code = sl_certificate_is_valid(cert) ? 0 : 1;

done:
    sl_string_free(det);
    sl_certificate_free(cert);
    sl_matrix_free(a);
    sl_matrix_free(b);
    return code;
}
