"""Tabulate the four algebra conditions over every preset space."""
import argparse

from halfplane import banach_checks, preset
from halfplane.weight import PRESET_NAMES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", nargs="*", default=list(PRESET_NAMES))
    args = ap.parse_args()
    print(f"{'space':<26}{'check':<24}{'verdict':<14}{'method':<12}value")
    for name in args.presets:
        for rep in banach_checks(preset(name)):
            value = rep.value if not isinstance(rep.value, float) else f"{rep.value:.6g}"
            print(f"{name:<26}{rep.check:<24}{rep.verdict:<14}{rep.method:<12}{value}")


if __name__ == "__main__":
    main()
