from django.core.management.base import BaseCommand

from scenarios.presets import PRESET_GROUPS, PRESETS


class Command(BaseCommand):
    help = 'List built-in scenario presets'

    def handle(self, *args, **options):
        for name in sorted(PRESETS):
            preset = PRESETS[name]
            broker = 'broker on' if preset.get('broker_enabled', True) else 'broker off'
            self.stdout.write(f"{name:10} {broker:10} {preset['duration']:>6.0f}s  {preset.get('description', '')}")
        for name, members in sorted(PRESET_GROUPS.items()):
            self.stdout.write(f"{name:10} group      {', '.join(members)}")
