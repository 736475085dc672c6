"""Command-line entry points: corpus prep, training, evaluation, serving, chat."""

from __future__ import annotations

import json
import random
from dataclasses import asdict
from pathlib import Path

import click

from .corpus.annotate import annotate_user_acts
from .corpus.delex import ValueSpotter
from .corpus.goals import build_goal_db, sample_goal
from .corpus.loader import load_corpus
from .corpus.restaurants import load_restaurant_db
from .dialog_system.runner import run_dialog
from .dialog_system.system import DialogSystem
from .domain import MAX_TURNS
from .evaluation.cross import cross_study
from .evaluation.metrics import act_histogram, metric_report, simulate_corpus
from .evaluation.reports import (
    config_hash,
    cross_csv,
    hist_csv,
    metrics_json,
    save_curve_svg,
    save_hist_svg,
    write_text,
)
from .rl.policy import RlPolicy, RlSystemPolicy
from .rl.train import TrainConfig, rl_train
from .service.app import create_app
from .service.instructions import goal_instructions
from .service.sessions import SessionManager
from .service.store import EventStore
from .simulator.base import SIM_IDS
from .simulator.factory import build_artifacts, default_corpus_path, make_simulator
from .text import detokenize


@click.group()
def main():
    """A desk-scale laboratory for task-oriented dialog user simulators."""


# --- corpus -----------------------------------------------------------------

@main.group()
def corpus():
    """Corpus preparation commands."""


@corpus.command("ingest")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Corpus JSON; defaults to the bundled sample.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--seed", default=0, show_default=True)
def corpus_ingest(input_path, out_dir, seed):
    """Annotate user acts and build the balanced goal database."""
    db = load_restaurant_db()
    spotter = ValueSpotter(db)
    dialogs = load_corpus(input_path if input_path else default_corpus_path())
    annotated, report = annotate_user_acts(dialogs, spotter=spotter)
    goal_db, balance = build_goal_db(annotated, seed=seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_text(
        out / "annotated.jsonl",
        "".join(json.dumps(d.to_json(), sort_keys=True) + "\n" for d in annotated),
    )
    write_text(
        out / "goals.json",
        json.dumps({"goals": goal_db.to_json(), "balance": balance},
                   sort_keys=True, indent=2) + "\n",
    )
    write_text(
        out / "restaurants.json",
        json.dumps([r.to_json() for r in db.restaurants], sort_keys=True, indent=2) + "\n",
    )
    write_text(
        out / "annotation_report.json",
        json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n",
    )
    click.echo(
        f"annotated {len(annotated)} dialogs; "
        f"match rate {report.match_rate:.3f}; "
        f"{len(goal_db.goals)} goals"
    )


# --- training ---------------------------------------------------------------

@main.command()
@click.option("--sim", "sim_id", type=click.Choice(SIM_IDS), default="agen-t", show_default=True)
@click.option("--episodes", default=30_000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--eval-every", default=1000, show_default=True)
@click.option("--eval-episodes", default=100, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--plot", is_flag=True, help="Also write curve.svg.")
def train(sim_id, episodes, seed, eval_every, eval_episodes, out_dir, plot):
    """REINFORCE-train a system policy against one simulator."""
    artifacts = build_artifacts()
    config = TrainConfig(
        sim_id=sim_id,
        episodes=episodes,
        seed=seed,
        eval_every=eval_every,
        eval_episodes=eval_episodes,
    )
    result = rl_train(artifacts, config)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result.policy.save(out / "policy.json")
    lines = [f"# seed={seed} config={config_hash(asdict(config))}", "episode,success"]
    lines += [f"{p.episode},{p.success_rate:.4f}" for p in result.curve]
    write_text(out / "curve.csv", "\n".join(lines) + "\n")
    log_lines = [
        json.dumps(
            {"episode": p.episode, "success_rate": p.success_rate, "mean_return": p.mean_return},
            sort_keys=True,
        )
        for p in result.curve
    ]
    log_lines.append(
        json.dumps(
            {"event": "done", "episodes_run": result.episodes_run, "converged": result.converged},
            sort_keys=True,
        )
    )
    write_text(out / "train_log.jsonl", "\n".join(log_lines) + "\n")
    if plot:
        save_curve_svg(out / "curve.svg", {sim_id: result.curve})
    final = result.curve[-1].success_rate if result.curve else float("nan")
    click.echo(
        f"{sim_id}: {result.episodes_run} episodes, "
        f"final eval success {final:.2f}, converged={result.converged}"
    )


# --- evaluation -------------------------------------------------------------

@main.group(name="eval")
def eval_group():
    """Automatic metrics and the cross study."""


@eval_group.command("metrics")
@click.option("--sim", "sim_ids", type=click.Choice(SIM_IDS), multiple=True,
              help="Repeatable; defaults to all six simulators.")
@click.option("--n", default=200, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--plot", is_flag=True, help="Also write hist.svg.")
def eval_metrics(sim_ids, n, seed, out_dir, plot):
    """Perplexity, vocabulary, utterance length, and act histograms."""
    sim_ids = sim_ids or SIM_IDS
    artifacts = build_artifacts()
    reports = []
    histograms = {}
    for sim_id in sim_ids:
        reports.append(metric_report(sim_id, artifacts, n=n, seed=seed))
        batch = simulate_corpus(make_simulator(sim_id, artifacts, seed=seed), artifacts, n=n, seed=seed)
        histograms[sim_id] = act_histogram(batch)
    out = Path(out_dir)
    config = {"n": n, "seed": seed, "sims": list(sim_ids)}
    write_text(out / "metrics.json", metrics_json(reports, seed, config))
    write_text(out / "act_hist.csv", hist_csv(histograms, seed))
    if plot:
        save_hist_svg(out / "hist.svg", histograms)
    for report in reports:
        click.echo(
            f"{report.sim_id}: ppl={report.ppl:.2f} vocab={report.vocab} "
            f"utt_len={report.avg_utt_len:.2f}"
        )


def load_policy_dir(directory: Path, require_all: bool = True) -> dict[str, RlPolicy]:
    """Read <sim-id>.json (or <sim-id>/policy.json) files from a directory."""
    policies = {}
    missing = []
    for sim_id in SIM_IDS:
        for candidate in (directory / f"{sim_id}.json", directory / sim_id / "policy.json"):
            if candidate.exists():
                policies[sim_id] = RlPolicy.load(candidate)
                break
        else:
            missing.append(sim_id)
    if require_all and missing:
        raise click.ClickException(
            f"missing policy files under {directory}: {', '.join(missing)}"
        )
    return policies


@eval_group.command("cross")
@click.option("--policies", "policies_dir", type=click.Path(exists=True, file_okay=False),
              required=True)
@click.option("--n", default=200, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
def eval_cross(policies_dir, n, seed, out_dir):
    """Evaluate all six trained systems against all six simulators."""
    policies = load_policy_dir(Path(policies_dir))
    matrix = cross_study(policies, build_artifacts(), n=n, seed=seed)
    config = {"n": n, "seed": seed, "policies": sorted(policies)}
    write_text(Path(out_dir) / "cross_matrix.csv", cross_csv(matrix, config))
    for system_id, average in matrix.column_averages.items():
        click.echo(f"sys-{system_id}: column average {average:.3f}")


# --- serving and chat -------------------------------------------------------

@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--policies", "policies_dir", type=click.Path(file_okay=False), default=None,
              help="Directory with trained <sim-id>.json policies to expose.")
@click.option("--store", "store_dir", type=click.Path(file_okay=False),
              default="chatlogs", show_default=True)
@click.option("--seed", default=0, show_default=True)
def serve(port, host, policies_dir, store_dir, seed):
    """Run the HTTP chat service used by the web interface."""
    import uvicorn

    policies = (
        load_policy_dir(Path(policies_dir), require_all=False) if policies_dir else {}
    )
    manager = SessionManager(
        policies=policies, store=EventStore(store_dir), seed=seed
    )
    click.echo(f"systems: {', '.join(manager.system_ids())}")
    uvicorn.run(create_app(manager), host=host, port=port)


@main.command()
@click.option("--sim", "sim_id", type=click.Choice(SIM_IDS), default=None,
              help="Let this simulator play the user instead of you.")
@click.option("--policy", "policy_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Trained policy file; defaults to the rule system.")
@click.option("--seed", default=0, show_default=True)
def chat(sim_id, policy_path, seed):
    """Terminal chat with the dialog system, no web interface needed."""
    artifacts = build_artifacts()
    policy = None
    system_id = "rule"
    if policy_path:
        policy = RlSystemPolicy(RlPolicy.load(policy_path), epsilon=0.0)
        system_id = "rl"
    system = DialogSystem(
        policy=policy,
        db=artifacts.db,
        spotter=artifacts.spotter,
        seed=seed,
        system_id=system_id,
    )
    goal = sample_goal(artifacts.goal_db, random.Random(seed))
    if sim_id:
        dialog = run_dialog(make_simulator(sim_id, artifacts, seed=seed), system, goal)
        for turn in dialog.turns:
            click.echo(f"{turn.speaker:>6}: {detokenize(list(turn.utterance))}")
        click.echo(f"outcome: {dialog.outcome.value}")
        return
    click.echo("your goal: " + goal_instructions(goal))
    click.echo("type your messages below; empty line or 'quit' ends the chat.")
    system.reset()
    for _ in range(MAX_TURNS):
        text = click.prompt("you", default="", show_default=False).strip()
        if not text or text.lower() in {"quit", "exit"}:
            break
        response = system.respond(text)
        click.echo("system: " + detokenize(list(response.utterance)))
        if response.done:
            break


if __name__ == "__main__":
    main()
