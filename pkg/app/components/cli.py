#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
命令行界面

功能:
1. 全局参数: --quiver、--field、--objects、--json、--seed、--verbose-triangles、--log-level
2. 同调计算: hom、ext、decompose
3. silting: check-presilting、check-silting、mutate、complete-presilting、silting-to-tilting、bongartz
4. SMC: ext-quiver、check-presmc、complete-presmc
5. 约化: reduce --exceptional E --object Y
6. A 型枚举: oracle enumerate-silting | enumerate-tilting | enumerate-smc | enumerate-presilting | enumerate-presmc
7. 设置: settings show | settings set KEY VALUE

退出码: 0 成功 (包括 "无法补全" 这一否定答案)，1 前置条件不满足，2 解析错误，3 内部校验失败。
"""

import sys
import json
import argparse
import logging

from app.config import APP_NAME, APP_VERSION, DEFAULT_USER_SETTINGS
from app.components.report import Report
from app.controllers import silting_engine, smc_engine, typea_oracle
from app.controllers.perpendicular import check_exceptional, thick_perp_project
from app.controllers.session import Session, resolve_field
from app.controllers.settings_manager import SettingsManager
from app.models import decomposition
from app.models.derived import DObject, dhom_dim
from app.models.quiver import class_basis_determinant
from app.utils.errors import ParseError, WorkbenchError
from app.utils.logger import TriangleCollector

logger = logging.getLogger("SiltWorkbench.CLI")


class _ArgumentParser(argparse.ArgumentParser):
    """参数错误时抛出 ParseError 而不是直接退出"""

    def error(self, message):
        raise ParseError(f"命令行参数错误: {message}", condition="Arguments")


def build_parser():
    parser = _ArgumentParser(prog=APP_NAME.lower(), description="遗传代数导出范畴上的 silting / SMC 工作台")
    parser.add_argument('--version', action='version', version=f"{APP_NAME} {APP_VERSION}")
    parser.add_argument('--quiver', metavar='FILE', help="箭图文件 (文本或 .json)，缺省为 A_2")
    parser.add_argument('--field', metavar='p|Q', help="基域: 奇素数或 Q")
    parser.add_argument('--objects', metavar='FILE', help="命名对象仓库 (JSON)")
    parser.add_argument('--json', action='store_true', help="输出 JSON 报告")
    parser.add_argument('--seed', type=int, help="分解算法的随机种子")
    parser.add_argument('--verbose-triangles', action='store_true', help="在报告中列出用到的每个三角")
    parser.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help="控制台日志级别")

    commands = parser.add_subparsers(dest='command', parser_class=_ArgumentParser)
    commands.required = True

    hom = commands.add_parser('hom', help="dim Hom(A, B[d])")
    hom.add_argument('a')
    hom.add_argument('b')
    hom.add_argument('--degree', type=int, default=0)

    ext = commands.add_parser('ext', help="dim Hom(A, B[1])")
    ext.add_argument('a')
    ext.add_argument('b')

    commands.add_parser('decompose', help="Krull-Schmidt 分解").add_argument('a')
    commands.add_parser('check-presilting').add_argument('t')
    commands.add_parser('check-silting').add_argument('t')

    mutate = commands.add_parser('mutate', help="在直和项处变异")
    mutate.add_argument('t')
    mutate.add_argument('--at', required=True, metavar='M')
    direction = mutate.add_mutually_exclusive_group(required=True)
    direction.add_argument('--left', dest='direction', action='store_const', const='left')
    direction.add_argument('--right', dest='direction', action='store_const', const='right')

    commands.add_parser('complete-presilting').add_argument('t')
    commands.add_parser('silting-to-tilting').add_argument('t')
    commands.add_parser('bongartz').add_argument('m')
    commands.add_parser('ext-quiver').add_argument('x')
    commands.add_parser('check-presmc').add_argument('x')
    commands.add_parser('complete-presmc').add_argument('x')

    reduce = commands.add_parser('reduce', help="投影到 thick(E)^⊥")
    reduce.add_argument('--exceptional', required=True, metavar='E')
    reduce.add_argument('--object', required=True, metavar='Y')

    oracle = commands.add_parser('oracle', help="A 型穷举")
    oracle.add_argument('task', choices=['enumerate-silting', 'enumerate-tilting', 'enumerate-smc',
                                         'enumerate-presilting', 'enumerate-presmc'])
    oracle.add_argument('--window', nargs=2, type=int, metavar=('A', 'B'))

    settings = commands.add_parser('settings', help="查看或修改设置")
    settings.add_argument('action', choices=['show', 'set'])
    settings.add_argument('key', nargs='?')
    settings.add_argument('value', nargs='?')
    return parser


# ---------------------------------------------------------------------------
# 命令
# ---------------------------------------------------------------------------

def _cmd_hom(session, args, report):
    a, b = session.parse_object(args.a), session.parse_object(args.b)
    dim = dhom_dim(a, b, args.degree)
    report.put("dim", dim).put("degree", args.degree)
    report.line(f"dim Hom({a.describe()}, ({b.describe()})[{args.degree}]) = {dim}")


def _cmd_ext(session, args, report):
    a, b = session.parse_object(args.a), session.parse_object(args.b)
    dim = dhom_dim(a, b, 1)
    report.put("dim", dim)
    report.line(f"dim Ext¹({a.describe()}, {b.describe()}) = {dim}")


def _cmd_decompose(session, args, report):
    obj = session.parse_object(args.a)
    pieces = [{"summand": stalk.describe(), "multiplicity": count} for stalk, count in obj.normalized()]
    report.put("summands", pieces)
    report.add_object("decomposition", obj)
    for piece in pieces:
        report.line(f"{piece['summand']} × {piece['multiplicity']}")


def _cmd_check_presilting(session, args, report):
    t = session.parse_object(args.t)
    violations = silting_engine.presilting_violations(t)
    report.put("presilting", not violations).put("violations", violations)
    report.line("presilting" if not violations else f"不是 presilting: {len(violations)} 处违例")
    for v in violations:
        report.line(f"  Hom({v['source']}, {v['target']}[{v['degree']}]) 维数 {v['dim']}")


def _cmd_check_silting(session, args, report):
    t = session.parse_object(args.t)
    silting = silting_engine.is_silting(t)
    certificate = silting_engine.certificate(t)
    report.put("silting", silting).put("certificate", certificate)
    if session.quiver.is_type_a:
        report.put("oracle_generates", typea_oracle.generates([t], session.quiver, session.field))
    if silting:
        report.line(f"silting, {len(t)} summands, det {certificate['determinant']}")
    else:
        report.line(f"不是 silting: {len(t)} 个直和项, presilting={certificate['presilting']}, "
                    f"basic={certificate['basic']}")


def _cmd_mutate(session, args, report):
    t = session.parse_object(args.t)
    at = session.parse_object(args.at)
    mutation = silting_engine.mutate(t, at, args.direction)
    report.put("mutation", mutation.to_dict())
    report.add_object("result", mutation.result).add_object("new_summand", mutation.new_summand)
    first, second, third = (x.describe() for x in mutation.triangle)
    report.line(f"{args.direction} 变异: {mutation.replaced.describe()} ↦ {mutation.new_summand.describe()}")
    report.line(f"三角: {first} → {second} → {third} → ({first})[1]")


def _cmd_complete_presilting(session, args, report):
    t = session.parse_object(args.t)
    result = silting_engine.complete_presilting(t)
    report.put("certificate", silting_engine.certificate(result))
    report.add_object("silting", result)
    report.line(f"补全为 {len(result)} 个直和项的 silting 对象")


def _cmd_silting_to_tilting(session, args, report):
    t = session.parse_object(args.t)
    module = silting_engine.silting_to_tilting(t)
    obj = DObject.stalk(module)
    report.put("summands", len(obj)).add_object("tilting", obj)
    report.line(f"tilting 模: {obj.describe()}")


def _cmd_bongartz(session, args, report):
    m = session.parse_module(args.m)
    complement = silting_engine.bongartz_complete(m)
    complement_obj = DObject.stalk(complement)
    total = DObject.stalk(m).direct_sum(complement_obj).basic()
    report.add_object("complement", complement_obj).add_object("tilting", total)
    report.line(f"Bongartz 补: {complement_obj.describe()}")


def _cmd_ext_quiver(session, args, report):
    quiver_of_exts = smc_engine.ext_quiver(session.parse_collection(args.x))
    cycle = quiver_of_exts.find_cycle()
    report.put("vertices", [m.describe() for m in quiver_of_exts.members])
    report.put("arrows", quiver_of_exts.adjacency()).put("acyclic", not cycle)
    for arrow in quiver_of_exts.adjacency():
        report.line(f"{arrow['source']} → {arrow['target']} (×{arrow['multiplicity']})")
    report.line("无圈" if not cycle else f"有圈: {quiver_of_exts.describe_cycle(cycle)}")


def _cmd_check_presmc(session, args, report):
    violations = smc_engine.pre_smc_violations(session.parse_collection(args.x))
    report.put("pre_smc", not violations).put("violations", violations)
    report.line("pre-SMC" if not violations else f"不是 pre-SMC: {len(violations)} 处违例")
    for v in violations:
        report.line(f"  [{v['condition']}] Hom({v['source']}, {v['target']}[{v['degree']}]) ≠ 0")


def _cmd_complete_presmc(session, args, report):
    members = session.parse_collection(args.x)
    result = smc_engine.complete_presmc(members, session.quiver, session.field)
    determinant = class_basis_determinant([m.class_vector for m in result])
    report.put("members", [m.describe() for m in result]).put("determinant", determinant)
    report.add_object("smc", smc_engine.collection_object(result, session.quiver, session.field))
    report.line(f"SMC: {{{', '.join(m.describe() for m in result)}}}, det {determinant}")


def _cmd_reduce(session, args, report):
    e = session.parse_object(args.exceptional)
    y = session.parse_object(args.object)
    check_exceptional(e)
    projection = thick_perp_project(e, y)
    result = projection.result
    report.add_object("projection", result)
    report.put("approximation", projection.approximation.obj.describe())
    report.line(f"{y.describe()} 在 thick({e.describe()})^⊥ 中的投影: {result.describe()}")


def _cmd_oracle(session, args, report):
    low, high = args.window or SettingsManager().get_window()
    window = typea_oracle.Window(low, high)
    quiver, field = session.quiver, session.field
    tasks = {
        'enumerate-silting': lambda: typea_oracle.enumerate_silting(quiver, field, window),
        'enumerate-tilting': lambda: typea_oracle.enumerate_tilting_modules(quiver, field),
        'enumerate-smc': lambda: typea_oracle.enumerate_smc(quiver, field, window),
        'enumerate-presilting': lambda: typea_oracle.enumerate_presilting(quiver, field, window),
        'enumerate-presmc': lambda: typea_oracle.enumerate_presmc(quiver, field, window),
    }
    found = tasks[args.task]()
    report.put("count", len(found)).put("window", window.to_dict()).put("certification", "window-certified")
    width = len(str(len(found)))
    for index, obj in enumerate(found, start=1):
        report.add_object(f"{args.task.split('-', 1)[1]}_{index:0{width}d}", obj)
    report.line(f"{args.task}: {len(found)} 个 (窗口 [{low}, {high}])")


def _parse_setting_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _cmd_settings(args, report):
    settings = SettingsManager()
    if args.action == 'set':
        if args.key is None or args.value is None:
            raise ParseError("settings set 需要 KEY 与 VALUE", condition="Arguments")
        if args.key not in DEFAULT_USER_SETTINGS:
            raise ParseError(f"未知的设置项: {args.key}", condition="SettingKey")
        settings.set_setting(args.key, _parse_setting_value(args.value))
    report.put("settings", dict(settings.settings))
    for key in sorted(settings.settings):
        report.line(f"{key} = {settings.settings[key]}")


COMMANDS = {
    'hom': _cmd_hom,
    'ext': _cmd_ext,
    'decompose': _cmd_decompose,
    'check-presilting': _cmd_check_presilting,
    'check-silting': _cmd_check_silting,
    'mutate': _cmd_mutate,
    'complete-presilting': _cmd_complete_presilting,
    'silting-to-tilting': _cmd_silting_to_tilting,
    'bongartz': _cmd_bongartz,
    'ext-quiver': _cmd_ext_quiver,
    'check-presmc': _cmd_check_presmc,
    'complete-presmc': _cmd_complete_presmc,
    'reduce': _cmd_reduce,
    'oracle': _cmd_oracle,
}


# ---------------------------------------------------------------------------
# 入口
# ---------------------------------------------------------------------------

def _execute(args, report):
    if args.command == 'settings':
        _cmd_settings(args, report)
        return
    settings = SettingsManager()
    field = resolve_field(args.field, settings)
    seed = args.seed if args.seed is not None else settings.get_seed()
    decomposition.configure(seed=seed, trials=settings.get_random_trials())
    session = Session.from_files(args.quiver, field, args.objects)
    report.quiver, report.field = session.quiver, session.field
    COMMANDS[args.command](session, args, report)


def run(argv, configure_logging=None):
    """
    执行一条命令

    Args:
        argv (list): 命令行参数 (不含程序名)
        configure_logging (callable): 以日志级别为参数的日志初始化函数

    Returns:
        tuple: (退出码, 输出文本)
    """
    as_json = '--json' in argv
    try:
        args = build_parser().parse_args(argv)
    except ParseError as e:
        report = Report(None).fail(e)
        return report.exit_code, report.render(as_json)

    if configure_logging is not None:
        configure_logging(args.log_level or SettingsManager().get_setting('log_level', 'WARNING'))

    report = Report(args.command)
    collector = TriangleCollector().attach() if args.verbose_triangles else None
    try:
        _execute(args, report)
    except WorkbenchError as e:
        if e.exit_code:
            logger.error(f"{args.command} 失败 [{e.condition}]: {e.message}")
        else:
            logger.info(f"{args.command}: {e.message}")
        report.fail(e)
    finally:
        if collector is not None:
            collector.detach()
            report.triangles = collector.triangles
    return report.exit_code, report.render(args.json)


def main(argv=None, configure_logging=None):
    exit_code, output = run(sys.argv[1:] if argv is None else argv, configure_logging)
    if output:
        print(output)
    return exit_code
