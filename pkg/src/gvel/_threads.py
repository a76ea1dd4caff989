"""Worker-thread launcher for the parallel phases.

The heavy loops are ``nogil`` jitted kernels, so plain threads give real
parallelism; each phase launches its workers here and the join acts as the
barrier between phases.
"""

import threading


def run_on_workers(n_workers: int, target) -> None:
    """Run ``target(t)`` for t in [0, n_workers), one thread per worker.

    Exceptions raised inside workers (e.g. kernel compilation failures) are
    re-raised in the calling thread after all workers have joined.
    """
    if n_workers == 1:
        target(0)
        return
    failures = []

    def wrap(t):
        try:
            target(t)
        except BaseException as exc:  # noqa: BLE001 - propagated below
            failures.append(exc)

    threads = [
        threading.Thread(target=wrap, args=(t,), name=f"gvel-worker-{t}")
        for t in range(n_workers)
    ]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    if failures:
        raise failures[0]
