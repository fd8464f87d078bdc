/* The public header must stay consumable from plain C. */
#include <string.h>

#include "mehlerkit/mehlerkit.h"

int main(void) {
  if (strlen(mehlerkit_version()) == 0) return 1;

  mehlerkit_result* result = NULL;
  mehlerkit_status status =
      mehlerkit_run("{\"command\":\"verify\",\"family\":\"mehler\",\"order\":4}",
                    &result);
  if (status != MEHLERKIT_OK) return 2;
  if (!mehlerkit_result_passed(result)) return 3;
  if (strlen(mehlerkit_result_json(result)) == 0) return 4;
  mehlerkit_result_free(result);

  status = mehlerkit_run("{\"command\":\"none\"}", &result);
  if (status != MEHLERKIT_ERR_CONFIG) return 5;
  if (strlen(mehlerkit_last_error()) == 0) return 6;
  return 0;
}
