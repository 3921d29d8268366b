from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class Config(AppConfig):
    name = "discharge_lab"
    label = "discharge_lab"
    verbose_name = _("Discharge Lab")
