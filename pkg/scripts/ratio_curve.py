#!/usr/bin/env python3
"""Print the reachable/optimal ratio curve of the cardinality family.

For each rank K the shape parameter h is chosen to minimize the ratio;
the curve decreases toward 2/(2+sqrt(2)) ~ 0.5858.
"""

import argparse

from streamsub.hard_cardinality import limiting_ratio, ratio_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=2)
    ap.add_argument("--k-max", type=int, default=200)
    ap.add_argument("--step", type=int, default=1)
    args = ap.parse_args()

    print("K,h,ratio,ratio_float,gap_to_limit")
    limit = limiting_ratio()
    for K in range(args.k_min, args.k_max + 1, args.step):
        h, ratio = ratio_bound(K)
        print(f"{K},{h},{ratio},{float(ratio):.8f},{float(ratio) - limit:.8f}")


if __name__ == "__main__":
    main()
