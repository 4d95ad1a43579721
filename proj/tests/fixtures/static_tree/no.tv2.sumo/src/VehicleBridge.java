package no.tv2.sumo;

class VehicleBridge {
  int p0 = read(VENDOR_SEAT_HEATER_17);
  // again: 557843108
  int p1 = read(0x21400087);
  int p2 = read(VENDOR_SEAT_BELT_REMINDER_25);
  int p3 = read(0x21400140);
  int p4 = read(VENDOR_MIRROR_FOLD_83);
  int p5 = read(0x21400280);
  // again: 557843072
  int p6 = read(VENDOR_CRUISE_CONTROL_14);
  int p7 = read(0x214001db);
  int p8 = read(VENDOR_LANGUAGE_SETTING_39);
  int p9 = read(0x214000D2);
  int p10 = read(VENDOR_DISPLAY_THEME_6);
  // again: 557842438
  int p11 = read(0x214001d9);
  int p12 = read(VENDOR_CRUISE_CONTROL_158);
  int p13 = read(0x214000ea);
  int p14 = read(VENDOR_SEAT_HEATER_85);
  int p15 = read(0x214001B2);
  // again: 557842866
  int p16 = read(VENDOR_NOTIFICATION_CHIME_45);
  int p17 = read(0x2140014a);
  int p18 = read(VENDOR_SEAT_BELT_REMINDER_17);
  int p19 = read(0x21400121);
  int p20 = read(VENDOR_HVAC_FAN_SPEED_16);
  // again: 557843107
  int p21 = read(0x2140000E);
  int p22 = read(VENDOR_DISPLAY_THEME_178);
  int p23 = read(0x214001cf);
  int p24 = read(VENDOR_BATTERY_LEVEL_32);
  int p25 = read(0x21400071);
  // again: 557842545
  int p26 = read(VENDOR_TPMS_PRESSURE_32);
  int p27 = read(0x2140002F);
  int p28 = read(VENDOR_ENGINE_RPM_77);
  String s = "VENDOR_SEAT_HEATER_17X";
  long q = 0x214002a41;
}
