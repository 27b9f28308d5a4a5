from cli.commands import build_arg_parser, main
from cli.instance_file import InstanceFile, dump_instance, load_instance, parse_instance

__all__ = ['build_arg_parser', 'main', 'InstanceFile', 'dump_instance', 'load_instance', 'parse_instance']
