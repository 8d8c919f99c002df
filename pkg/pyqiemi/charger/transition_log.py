from typing import List


def format_transition(t: float, phase: str, event: str, duty: float, ptx: float) -> str:
    return f"t={t:.3f} phase={phase} event={event} duty={duty:.4f} ptx={ptx:.3f}"


class TransitionLog(object):
    """One line per tick: `t=<s> phase=<..> event=<..> duty=<..> ptx=<W>`."""

    def __init__(self):
        self.lines: List[str] = []

    def record(self, t: float, phase: str, event: str, duty: float, ptx: float) -> None:
        self.lines.append(format_transition(t, phase, event, duty, ptx))

    def write(self, path: str) -> None:
        with open(path, "w") as log_file:
            log_file.writelines(line + "\n" for line in self.lines)

    def __len__(self) -> int:
        return len(self.lines)
