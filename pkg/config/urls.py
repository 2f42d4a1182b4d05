from django.contrib import admin
from django.urls import path
from ninja import NinjaAPI
from api.views import router as api_router
from api.health import router as health_router

# Custom admin configuration adds build info to the header
import config.admin  # noqa: F401

api = NinjaAPI(title="Netbroker", description="WiFi/WiMAX brokerage simulator")
api.add_router("/v1/", api_router, tags=["simulation"])
api.add_router("", health_router)


urlpatterns = [
    path("admin/", admin.site.urls),
    path("api/", api.urls),
]
